//! Assembles CSS check matrices from a tile pair placed on a layout.
//!
//! Pipeline: place the X tile at every X-carrying anchor and the Z tile at
//! every Z-carrying anchor, truncate each placement to the qubit set, drop
//! qubits that lack X coverage or lack Z coverage, then drop checks left
//! empty. One trimming pass is enough: whether a qubit is covered depends only
//! on row supports at that qubit, and removing an empty row covers nothing.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec, IncrementalBasis};
use crate::layouts::{AnchorRole, Layout, LayoutError};
use crate::tiles::{validate_tile_pair, EdgeCoord, TileError, TilePair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodegenError {
    #[error("tile box {tile_w}x{tile_h} does not match layout box {layout_w}x{layout_h}")]
    BoxMismatch {
        tile_w: i32,
        tile_h: i32,
        layout_w: i32,
        layout_h: i32,
    },
    #[error(transparent)]
    Tile(#[from] TileError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("no logical qubits (k = 0)")]
    NoLogicals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliType {
    X,
    Z,
}

impl fmt::Display for PauliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliType::X => "X",
            PauliType::Z => "Z",
        })
    }
}

/// Where a check row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowOrigin {
    pub anchor: (i32, i32),
    pub role: AnchorRole,
    pub kind: PauliType,
    /// Some tile edges were cut (not qubits, or trimmed).
    pub truncated: bool,
    /// Same support as an earlier row of the same type.
    pub duplicate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TrimStats {
    pub qubits_before: usize,
    pub qubits_removed: usize,
    pub x_checks_removed: usize,
    pub z_checks_removed: usize,
    pub duplicate_x_checks: usize,
    pub duplicate_z_checks: usize,
}

impl TrimStats {
    pub fn checks_removed(&self) -> usize {
        self.x_checks_removed + self.z_checks_removed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certainty {
    Exact,
    UpperBound,
    LowerBound,
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certainty::Exact => "exact",
            Certainty::UpperBound => "upper bound",
            Certainty::LowerBound => "lower bound",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: Option<(usize, Certainty)>,
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some((d, c)) => write!(f, "[[{},{},{}]] (d: {})", self.n, self.k, d, c),
            None => write!(f, "[[{},{},?]]", self.n, self.k),
        }
    }
}

/// How aggressively to trim after placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrimMode {
    #[default]
    SinglePass,
    /// Repeat until nothing changes; reports the number of passes that changed something.
    Fixpoint,
}

/// A CSS code with its qubit map and check provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    qubits: Vec<EdgeCoord>,
    index: BTreeMap<EdgeCoord, usize>,
    h_x: BitMatrix,
    h_z: BitMatrix,
    x_origins: Vec<RowOrigin>,
    z_origins: Vec<RowOrigin>,
    rank_x: usize,
    rank_z: usize,
    trim: TrimStats,
    trim_passes: usize,
}

struct RawRow {
    origin: RowOrigin,
    support: Vec<EdgeCoord>,
}

fn sorted_by_row_order(layout: &Layout, want_x: bool) -> Vec<((i32, i32), AnchorRole)> {
    let mut anchors: Vec<_> = layout
        .anchors()
        .iter()
        .filter(|(_, r)| if want_x { r.has_x() } else { r.has_z() })
        .map(|(&p, &r)| (p, r))
        .collect();
    anchors.sort_by_key(|&((x, y), _)| (y, x));
    anchors
}

/// Places the tiles on the layout, truncates, trims and returns the code.
pub fn build_code(pair: &TilePair, layout: &Layout) -> Result<StabilizerCode, CodegenError> {
    build_code_with(pair, layout, TrimMode::SinglePass)
}

pub fn build_code_with(
    pair: &TilePair,
    layout: &Layout,
    mode: TrimMode,
) -> Result<StabilizerCode, CodegenError> {
    if pair.width() != layout.width() || pair.height() != layout.height() {
        return Err(CodegenError::BoxMismatch {
            tile_w: pair.width(),
            tile_h: pair.height(),
            layout_w: layout.width(),
            layout_h: layout.height(),
        });
    }
    validate_tile_pair(pair.x_tile(), pair.z_tile())?;
    layout.validate()?;

    let qubits = layout.qubits();
    let place = |want_x: bool| -> Vec<RawRow> {
        let tile = if want_x { pair.x_tile() } else { pair.z_tile() };
        let kind = if want_x { PauliType::X } else { PauliType::Z };
        sorted_by_row_order(layout, want_x)
            .into_iter()
            .map(|((ax, ay), role)| {
                let placed: Vec<EdgeCoord> = tile.placed(ax, ay).collect();
                let mut support: Vec<EdgeCoord> =
                    placed.iter().copied().filter(|e| qubits.contains(e)).collect();
                support.sort();
                RawRow {
                    origin: RowOrigin {
                        anchor: (ax, ay),
                        role,
                        kind,
                        truncated: support.len() < placed.len(),
                        duplicate: false,
                    },
                    support,
                }
            })
            .collect()
    };
    let x_rows = place(true);
    let z_rows = place(false);
    let candidate: Vec<EdgeCoord> = qubits.iter().copied().collect();
    Ok(trim_and_assemble(candidate, x_rows, z_rows, mode))
}

fn trim_and_assemble(
    mut candidate: Vec<EdgeCoord>,
    mut x_rows: Vec<RawRow>,
    mut z_rows: Vec<RawRow>,
    mode: TrimMode,
) -> StabilizerCode {
    let qubits_before = candidate.len();
    let (x_before, z_before) = (x_rows.len(), z_rows.len());
    let mut passes = 0;
    loop {
        let covered = |rows: &[RawRow]| -> HashSet<EdgeCoord> {
            rows.iter().flat_map(|r| r.support.iter().copied()).collect()
        };
        let (x_cov, z_cov) = (covered(&x_rows), covered(&z_rows));
        let keep: HashSet<EdgeCoord> = candidate
            .iter()
            .copied()
            .filter(|e| x_cov.contains(e) && z_cov.contains(e))
            .collect();
        let rows_before = x_rows.len() + z_rows.len();
        let qubits_prev = candidate.len();
        candidate.retain(|e| keep.contains(e));
        for rows in [&mut x_rows, &mut z_rows] {
            for row in rows.iter_mut() {
                let before = row.support.len();
                row.support.retain(|e| keep.contains(e));
                row.origin.truncated |= row.support.len() < before;
            }
            rows.retain(|r| !r.support.is_empty());
        }
        let changed = candidate.len() != qubits_prev || x_rows.len() + z_rows.len() != rows_before;
        if changed {
            passes += 1;
        }
        if mode == TrimMode::SinglePass || !changed {
            break;
        }
    }

    let index: BTreeMap<EdgeCoord, usize> =
        candidate.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let n = candidate.len();
    let assemble = |rows: &mut [RawRow]| -> (BitMatrix, Vec<RowOrigin>, usize) {
        let mut seen = HashSet::new();
        let mut dups = 0;
        let vecs = rows
            .iter_mut()
            .map(|r| {
                let v = BitVec::from_indices(n, r.support.iter().map(|e| index[e]));
                if !seen.insert(v.clone()) {
                    r.origin.duplicate = true;
                    dups += 1;
                }
                v
            })
            .collect();
        let m = BitMatrix::from_rows(n, vecs).expect("rows sized to n");
        (m, rows.iter().map(|r| r.origin).collect(), dups)
    };
    let (h_x, x_origins, dup_x) = assemble(&mut x_rows);
    let (h_z, z_origins, dup_z) = assemble(&mut z_rows);
    let rank_x = h_x.rank();
    let rank_z = h_z.rank();
    StabilizerCode {
        qubits: candidate,
        index,
        h_x,
        h_z,
        x_origins,
        z_origins,
        rank_x,
        rank_z,
        trim: TrimStats {
            qubits_before,
            qubits_removed: qubits_before - n,
            x_checks_removed: x_before - x_rows.len(),
            z_checks_removed: z_before - z_rows.len(),
            duplicate_x_checks: dup_x,
            duplicate_z_checks: dup_z,
        },
        trim_passes: passes,
    }
}

/// Anticommuting check pair found by [`check_commutation`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("X check {x_row} and Z check {z_row} overlap on {} qubits: {:?}", overlap.len(), overlap)]
pub struct CommutationError {
    pub x_row: usize,
    pub z_row: usize,
    pub overlap: Vec<usize>,
}

/// Accepts iff `H_X · H_Zᵀ = 0`; otherwise reports the first anticommuting pair in row order.
pub fn check_commutation(h_x: &BitMatrix, h_z: &BitMatrix) -> Result<(), CommutationError> {
    for (i, a) in h_x.rows().iter().enumerate() {
        for (j, b) in h_z.rows().iter().enumerate() {
            if a.dot(b) {
                let overlap = a.ones().filter(|&q| b.get(q)).collect();
                return Err(CommutationError {
                    x_row: i,
                    z_row: j,
                    overlap,
                });
            }
        }
    }
    Ok(())
}

/// `n − rank H_X − rank H_Z`.
pub fn compute_k(h_x: &BitMatrix, h_z: &BitMatrix) -> usize {
    (h_x.num_cols() - h_x.rank()).saturating_sub(h_z.rank())
}

/// Logical operator representatives, paired so that `⟨x_i, z_j⟩ = δ_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalBasis {
    pub x: Vec<BitVec>,
    pub z: Vec<BitVec>,
}

impl LogicalBasis {
    pub fn pairing(&self) -> BitMatrix {
        let mut p = BitMatrix::zeros(self.x.len(), self.z.len());
        for (i, a) in self.x.iter().enumerate() {
            for (j, b) in self.z.iter().enumerate() {
                p.set(i, j, a.dot(b));
            }
        }
        p
    }
}

/// Vectors of `ker(opposite)` independent modulo `rowspace(same)`.
fn logical_representatives(same: &BitMatrix, opposite: &BitMatrix) -> Vec<BitVec> {
    let mut basis = IncrementalBasis::new(same.num_cols());
    for row in same.rows() {
        basis.insert(row);
    }
    opposite
        .nullspace_basis()
        .into_iter()
        .filter_map(|v| basis.insert(&v))
        .collect()
}

/// Extracts `k` X and `k` Z logicals with identity pairing matrix.
pub fn logical_basis(h_x: &BitMatrix, h_z: &BitMatrix) -> Result<LogicalBasis, CodegenError> {
    let mut xs = logical_representatives(h_x, h_z);
    let mut zs = logical_representatives(h_z, h_x);
    debug_assert_eq!(xs.len(), zs.len());
    if xs.is_empty() {
        return Err(CodegenError::NoLogicals);
    }
    // Symplectic Gram-Schmidt.
    let k = xs.len();
    for i in 0..k {
        let j = (i..k)
            .find(|&j| xs[i].dot(&zs[j]))
            .expect("pairing matrix has full rank");
        zs.swap(i, j);
        let (xi, zi) = (xs[i].clone(), zs[i].clone());
        for m in 0..k {
            if m == i {
                continue;
            }
            if xs[m].dot(&zi) {
                xs[m].xor_assign(&xi);
            }
            if xi.dot(&zs[m]) {
                zs[m].xor_assign(&zi);
            }
        }
    }
    Ok(LogicalBasis { x: xs, z: zs })
}

impl StabilizerCode {
    /// Code from explicit matrices, e.g. for hand-built test cases. No trimming is applied.
    pub fn from_matrices(h_x: BitMatrix, h_z: BitMatrix) -> Self {
        assert_eq!(h_x.num_cols(), h_z.num_cols(), "matrix widths differ");
        let n = h_x.num_cols();
        let qubits: Vec<EdgeCoord> = (0..n as i32).map(|i| EdgeCoord::h(i, 0)).collect();
        let index = qubits.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let origin = |kind| RowOrigin {
            anchor: (0, 0),
            role: AnchorRole::Both,
            kind,
            truncated: false,
            duplicate: false,
        };
        let rank_x = h_x.rank();
        let rank_z = h_z.rank();
        Self {
            x_origins: vec![origin(PauliType::X); h_x.num_rows()],
            z_origins: vec![origin(PauliType::Z); h_z.num_rows()],
            qubits,
            index,
            h_x,
            h_z,
            rank_x,
            rank_z,
            trim: TrimStats {
                qubits_before: n,
                ..TrimStats::default()
            },
            trim_passes: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.qubits.len()
    }

    pub fn k(&self) -> usize {
        (self.n() - self.rank_x).saturating_sub(self.rank_z)
    }

    pub fn params(&self) -> CodeParameters {
        CodeParameters {
            n: self.n(),
            k: self.k(),
            d: None,
        }
    }

    pub fn h_x(&self) -> &BitMatrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &BitMatrix {
        &self.h_z
    }

    pub fn checks(&self, kind: PauliType) -> &BitMatrix {
        match kind {
            PauliType::X => &self.h_x,
            PauliType::Z => &self.h_z,
        }
    }

    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    pub fn rank_z(&self) -> usize {
        self.rank_z
    }

    /// Qubits in column order.
    pub fn qubits(&self) -> &[EdgeCoord] {
        &self.qubits
    }

    pub fn column_of(&self, e: EdgeCoord) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn x_origins(&self) -> &[RowOrigin] {
        &self.x_origins
    }

    pub fn z_origins(&self) -> &[RowOrigin] {
        &self.z_origins
    }

    pub fn trim_stats(&self) -> TrimStats {
        self.trim
    }

    /// Number of trimming passes that changed anything (0 or 1 in single-pass mode).
    pub fn trim_passes(&self) -> usize {
        self.trim_passes
    }

    pub fn check_commutation(&self) -> Result<(), CommutationError> {
        check_commutation(&self.h_x, &self.h_z)
    }

    pub fn logical_basis(&self) -> Result<LogicalBasis, CodegenError> {
        logical_basis(&self.h_x, &self.h_z)
    }

    /// Runs the trimming step again on the finished code.
    pub fn retrim(&self) -> StabilizerCode {
        let rows = |m: &BitMatrix, origins: &[RowOrigin]| -> Vec<RawRow> {
            m.rows()
                .iter()
                .zip(origins)
                .map(|(r, &origin)| RawRow {
                    origin: RowOrigin {
                        duplicate: false,
                        ..origin
                    },
                    support: r.ones().map(|q| self.qubits[q]).collect(),
                })
                .collect()
        };
        trim_and_assemble(
            self.qubits.clone(),
            rows(&self.h_x, &self.x_origins),
            rows(&self.h_z, &self.z_origins),
            TrimMode::Fixpoint,
        )
    }

    /// Support of a column vector as qubit edges.
    pub fn edges_of(&self, v: &BitVec) -> Vec<EdgeCoord> {
        v.ones().map(|q| self.qubits[q]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layouts::BoundaryLayers;
    use crate::tiles::{tiles_from_polynomials, PolynomialSpec, Tile};

    fn surface_pair() -> TilePair {
        TilePair::from_x_tile(Tile::new(2, 2, [(0, 1), (1, 1)], [(1, 0), (1, 1)]).unwrap())
    }

    fn row1_pair() -> TilePair {
        TilePair::from_x_tile(
            Tile::new(3, 3, [(0, 0), (2, 1), (2, 2)], [(0, 2), (1, 2), (2, 0)]).unwrap(),
        )
    }

    fn b4_pair() -> TilePair {
        TilePair::from_x_tile(
            Tile::new(4, 4, [(0, 0), (0, 3), (2, 2), (3, 0)], [(0, 1), (1, 0), (1, 1), (3, 3)])
                .unwrap(),
        )
    }

    fn d4_surface() -> StabilizerCode {
        let layout = Layout::unrotated(3, 3, 2, 2, BoundaryLayers::one_sided(1, 1)).unwrap();
        build_code(&surface_pair(), &layout).unwrap()
    }

    #[test]
    fn surface_code_distance_four_layout() {
        let code = d4_surface();
        assert_eq!((code.n(), code.k()), (25, 1));
        assert!(code.check_commutation().is_ok());
        assert_eq!(code.h_x().num_rows(), 12);
        // Six boundary checks lose one edge.
        assert_eq!(code.h_x().count_ones(), 42);
        // Two-sided layers give the same code after trimming.
        let layout = Layout::unrotated_default(3, 3, 2, 2).unwrap();
        let code2 = build_code(&surface_pair(), &layout).unwrap();
        assert_eq!((code2.n(), code2.k()), (25, 1));
    }

    #[test]
    fn table1_row1_parameters() {
        let layout = Layout::unrotated_default(10, 10, 3, 3).unwrap();
        let code = build_code(&row1_pair(), &layout).unwrap();
        assert_eq!((code.n(), code.k()), (288, 8));
        assert_eq!(code.trim_stats().qubits_removed, 0);
        assert_eq!(code.h_x().num_rows(), 140);
        assert_eq!(code.h_z().num_rows(), 140);
        assert_eq!(code.rank_x(), 140);
        assert_eq!(code.rank_z(), 140);
        assert!(code.check_commutation().is_ok());
    }

    #[test]
    fn b4_parameters() {
        let code = build_code(&b4_pair(), &Layout::unrotated_default(9, 9, 4, 4).unwrap()).unwrap();
        assert_eq!((code.n(), code.k()), (288, 18));
        let code =
            build_code(&b4_pair(), &Layout::unrotated_default(13, 13, 4, 4).unwrap()).unwrap();
        assert_eq!((code.n(), code.k()), (512, 18));
    }

    #[test]
    fn hypergraph_product_counts() {
        // Classical codes from a(x) on l = 12 bits have l - deg(a) = 10 checks, so the
        // product has l·m + (l - deg a)(m - deg b) = 144 + 100 qubits.
        let pair = tiles_from_polynomials(&PolynomialSpec::parse("1+x+x^2", "1+y+y^2").unwrap())
            .unwrap();
        let code = build_code(&pair, &Layout::unrotated_default(10, 10, 3, 3).unwrap()).unwrap();
        assert_eq!(code.n(), 244);
        assert_eq!(code.k(), 4);
        let stats = code.trim_stats();
        assert_eq!(stats.qubits_removed, 44);
        assert_eq!(stats.x_checks_removed, 20);
        assert_eq!(stats.z_checks_removed, 20);
        assert_eq!(code.rank_x(), code.h_x().num_rows());
        assert_eq!(code.rank_z(), code.h_z().num_rows());
    }

    #[test]
    fn box_mismatch() {
        let layout = Layout::unrotated_default(3, 3, 3, 3).unwrap();
        assert!(matches!(
            build_code(&surface_pair(), &layout),
            Err(CodegenError::BoxMismatch { .. })
        ));
    }

    #[test]
    fn invalid_layout_rejected() {
        let layout = Layout::unrotated_default(4, 4, 3, 3)
            .unwrap()
            .with_anchor(0, 6, AnchorRole::ZOnly)
            .unwrap();
        assert!(matches!(
            build_code(&row1_pair(), &layout),
            Err(CodegenError::Layout(_))
        ));
    }

    #[test]
    fn commutation_witness() {
        let code = d4_surface();
        assert!(code.check_commutation().is_ok());
        let mut h_x = code.h_x().clone();
        let q = code.h_z().row(0).first_one().unwrap();
        let row = (0..h_x.num_rows()).find(|&r| !h_x.get(r, q)).unwrap();
        h_x.set(row, q, true);
        let err = check_commutation(&h_x, code.h_z()).unwrap_err();
        assert!(err.overlap.len() % 2 == 1);
        assert!(h_x.row(err.x_row).dot(code.h_z().row(err.z_row)));
        assert!(check_commutation(&BitMatrix::zeros(0, 4), &BitMatrix::zeros(0, 4)).is_ok());
    }

    #[test]
    fn k_matches_rank_formula() {
        let code = d4_surface();
        assert_eq!(compute_k(code.h_x(), code.h_z()), 1);
        assert_eq!(code.params().to_string(), "[[25,1,?]]");
    }

    #[test]
    fn logicals_of_surface_code() {
        let code = d4_surface();
        let basis = code.logical_basis().unwrap();
        assert_eq!(basis.x.len(), 1);
        assert_eq!(basis.pairing(), BitMatrix::identity(1));
        assert!(code.h_z().mul_vec(&basis.x[0]).unwrap().is_zero());
        assert!(!code.h_x().in_rowspace(&basis.x[0]).unwrap());
    }

    #[test]
    fn logicals_of_row1_code() {
        let code = build_code(&row1_pair(), &Layout::unrotated_default(10, 10, 3, 3).unwrap())
            .unwrap();
        let basis = code.logical_basis().unwrap();
        assert_eq!(basis.x.len(), 8);
        assert_eq!(basis.z.len(), 8);
        assert_eq!(basis.pairing(), BitMatrix::identity(8));
        for z in &basis.z {
            assert!(code.h_x().mul_vec(z).unwrap().is_zero());
        }
    }

    #[test]
    fn no_logicals_error() {
        // Single qubit with one X and one Z check: commuting is impossible, so use two qubits.
        let h_x = BitMatrix::from_strs(&["11"]);
        let h_z = BitMatrix::from_strs(&["11"]);
        // n = 2, ranks 1 + 1 -> k = 0
        assert_eq!(compute_k(&h_x, &h_z), 0);
        assert_eq!(logical_basis(&h_x, &h_z), Err(CodegenError::NoLogicals));
    }

    #[test]
    fn trimming_idempotent_and_single_pass() {
        let pair = tiles_from_polynomials(&PolynomialSpec::parse("1+x+x^2", "1+y+y^2").unwrap())
            .unwrap();
        let layout = Layout::unrotated_default(4, 5, 3, 3).unwrap();
        let code = build_code(&pair, &layout).unwrap();
        assert_eq!(code.trim_passes(), 1);
        let fix = build_code_with(&pair, &layout, TrimMode::Fixpoint).unwrap();
        assert_eq!(fix.trim_passes(), 1);
        assert_eq!(fix.h_x(), code.h_x());
        let again = code.retrim();
        assert_eq!(again.h_x(), code.h_x());
        assert_eq!(again.h_z(), code.h_z());
        assert_eq!(again.qubits(), code.qubits());
        assert_eq!(again.trim_passes(), 0);
    }

    #[test]
    fn bulk_rows_are_translates() {
        let code = build_code(&row1_pair(), &Layout::unrotated_default(4, 4, 3, 3).unwrap())
            .unwrap();
        let bulk: Vec<(usize, &RowOrigin)> = code
            .x_origins()
            .iter()
            .enumerate()
            .filter(|(_, o)| o.role == AnchorRole::Both)
            .collect();
        let (r0, o0) = bulk[0];
        let base = code.edges_of(code.h_x().row(r0));
        for &(r, o) in &bulk[1..] {
            assert!(!o.truncated);
            let (dx, dy) = (o.anchor.0 - o0.anchor.0, o.anchor.1 - o0.anchor.1);
            let mut moved: Vec<EdgeCoord> = base.iter().map(|e| e.translate(dx, dy)).collect();
            moved.sort();
            assert_eq!(code.edges_of(code.h_x().row(r)), moved);
        }
    }

    #[test]
    fn rows_sorted_by_anchor_y_then_x() {
        let code = d4_surface();
        let keys: Vec<_> = code.x_origins().iter().map(|o| (o.anchor.1, o.anchor.0)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let cols = code.qubits().to_vec();
        let mut sorted_cols = cols.clone();
        sorted_cols.sort();
        assert_eq!(cols, sorted_cols);
    }

    #[test]
    fn k_invariant_under_column_permutation() {
        let code = build_code(&row1_pair(), &Layout::unrotated_default(3, 4, 3, 3).unwrap())
            .unwrap();
        let n = code.n();
        let perm: Vec<usize> = (0..n).rev().collect();
        let h_x = code.h_x().select_columns(&perm);
        let h_z = code.h_z().select_columns(&perm);
        assert_eq!(compute_k(&h_x, &h_z), code.k());
    }
}
