//! Spectral sequence of a finite filtered F2 chain complex, and the weight
//! filtration of the cube of resolutions.
//!
//! Generators carry integer filtration weights which the differential never
//! increases. Pages are computed by rank arithmetic over F2:
//!
//!   E_r^w = Z_r^w / (Z_{r-1}^{w-1} + d Z_{r-1}^{w+r-1}),
//!   Z_r^w = { x in F_w : dx in F_{w-r} },  Z_0^w = F_w.
//!
//! The page differential d_r maps weight w to weight w-r; its matrix is
//! computed on deterministic echelon-pivot coset representatives.
//!
//! `from_cube` realizes the total cube complex with weight N - |v|, so the
//! Khovanov differential strictly drops the weight by one: the E1 page is
//! the associated graded (one reduced vertex group per weight), d_1 is the
//! Khovanov differential, and the sequence collapses at E2. Floer-theoretic
//! maps between distant vertices are not computable from a diagram and are
//! taken to be zero here, so pages beyond E2 reflect only this model
//! truncation unless higher differentials are injected explicitly.

use crate::khovanov::CubeComplex;
use crate::linalg::{kernel_basis_f2, rank_f2, Echelon, F2Matrix};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecSeqError {
    #[error("page index {0} is invalid; pages are defined for r >= 1")]
    InvalidPage(i32),
    #[error("differential increases filtration weight at generator {0}")]
    WeightIncrease(usize),
    #[error("differential does not square to zero")]
    NotADifferential,
}

/// A finite F2 chain complex with a filtration weight per generator.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    weights: Vec<i32>,
    /// Auxiliary internal grading carried along for reporting.
    aux: Vec<i32>,
    d: F2Matrix,
}

/// Dimensions and differentials of one page.
#[derive(Debug, Clone)]
pub struct PageTable {
    pub r: i32,
    /// weight -> dimension of E_r^w (weights with zero dim omitted)
    pub dims: BTreeMap<i32, usize>,
    /// weight -> matrix of d_r : E_r^w -> E_r^{w-r}
    pub d_r: BTreeMap<i32, F2Matrix>,
}

impl PageTable {
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

impl FilteredComplex {
    /// Build and validate: entries of `d` must not increase weight, d^2 = 0.
    pub fn new(weights: Vec<i32>, aux: Vec<i32>, d: F2Matrix) -> Result<Self, SpecSeqError> {
        let n = weights.len();
        assert_eq!(d.rows(), n);
        assert_eq!(d.cols(), n);
        assert_eq!(aux.len(), n);
        for col in 0..n {
            for row in 0..n {
                if d.get(row, col) && weights[row] > weights[col] {
                    return Err(SpecSeqError::WeightIncrease(col));
                }
            }
        }
        if !d.mul(&d).is_zero() {
            return Err(SpecSeqError::NotADifferential);
        }
        Ok(FilteredComplex { weights, aux, d })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn aux_gradings(&self) -> &[i32] {
        &self.aux
    }

    pub fn differential(&self) -> &F2Matrix {
        &self.d
    }

    pub fn total_homology_dim(&self) -> usize {
        self.dim() - 2 * rank_f2(&self.d)
    }

    fn weight_range(&self) -> Option<(i32, i32)> {
        let lo = self.weights.iter().min()?;
        let hi = self.weights.iter().max()?;
        Some((*lo, *hi))
    }

    /// Basis (as packed rows) of Z_r^w = { x in F_w : dx in F_{w-r} };
    /// Z_0^w is F_w itself.
    fn cycle_space(&self, r: i32, w: i32) -> F2Matrix {
        let n = self.dim();
        let in_fw: Vec<usize> = (0..n).filter(|&g| self.weights[g] <= w).collect();
        if r <= 0 {
            let mut basis = F2Matrix::zero(in_fw.len(), n);
            for (k, &g) in in_fw.iter().enumerate() {
                basis.set(k, g, true);
            }
            return basis;
        }
        // restriction of d to F_w, rows above weight w-r must vanish
        let bad_rows: Vec<usize> = (0..n).filter(|&g| self.weights[g] > w - r).collect();
        let mut m = F2Matrix::zero(bad_rows.len(), in_fw.len());
        for (col, &g) in in_fw.iter().enumerate() {
            for (row, &t) in bad_rows.iter().enumerate() {
                if self.d.get(t, g) {
                    m.set(row, col, true);
                }
            }
        }
        let ker = kernel_basis_f2(&m);
        // embed kernel coordinates back into the full space
        let mut basis = F2Matrix::zero(ker.rows(), n);
        for k in 0..ker.rows() {
            for (col, &g) in in_fw.iter().enumerate() {
                if ker.get(k, col) {
                    basis.set(k, g, true);
                }
            }
        }
        basis
    }

    fn boundary_part(&self, r: i32, w: i32) -> F2Matrix {
        // d Z_{r-1}^{w+r-1}
        let z = self.cycle_space(r - 1, w + r - 1);
        let mut out = F2Matrix::zero(z.rows(), self.dim());
        for k in 0..z.rows() {
            let img = self.d.apply(z.row(k));
            for g in 0..self.dim() {
                if img[g / 64] >> (g % 64) & 1 == 1 {
                    out.set(k, g, true);
                }
            }
        }
        out
    }

    /// Insert the denominator of E_r^w (boundaries plus lower filtration
    /// cycles) into a fresh echelon.
    fn denominator_echelon(&self, r: i32, w: i32) -> Echelon {
        let mut ech = Echelon::new(self.dim());
        let lower = self.cycle_space(r - 1, w - 1);
        for k in 0..lower.rows() {
            ech.insert(lower.row(k));
        }
        let bdry = self.boundary_part(r, w);
        for k in 0..bdry.rows() {
            ech.insert(bdry.row(k));
        }
        ech
    }

    /// The E_r page, r >= 1.
    pub fn page(&self, r: i32) -> Result<PageTable, SpecSeqError> {
        if r < 1 {
            return Err(SpecSeqError::InvalidPage(r));
        }
        let mut dims = BTreeMap::new();
        let mut d_r = BTreeMap::new();
        let Some((lo, hi)) = self.weight_range() else {
            return Ok(PageTable { r, dims, d_r });
        };
        // coset representatives of E_r^w chosen by echelon pivoting
        let mut reps: BTreeMap<i32, Vec<Vec<u64>>> = BTreeMap::new();
        for w in lo..=hi {
            let z = self.cycle_space(r, w);
            let mut ech = self.denominator_echelon(r, w);
            let mut chosen: Vec<Vec<u64>> = Vec::new();
            for k in 0..z.rows() {
                if ech.insert(z.row(k)).is_some() {
                    chosen.push(z.row(k).to_vec());
                }
            }
            if !chosen.is_empty() {
                dims.insert(w, chosen.len());
            }
            reps.insert(w, chosen);
        }
        // d_r : E_r^w -> E_r^{w-r} in the chosen representatives
        for w in lo..=hi {
            let srcs = &reps[&w];
            if srcs.is_empty() {
                continue;
            }
            let tgt_w = w - r;
            let tgts = reps.get(&tgt_w).cloned().unwrap_or_default();
            let mut mat = F2Matrix::zero(tgts.len(), srcs.len());
            if !tgts.is_empty() {
                // denominator first, then target representatives: the
                // combination indices of the reps give coset coordinates
                let mut ech = self.denominator_echelon(r, tgt_w);
                let rep_index: Vec<usize> = tgts
                    .iter()
                    .map(|t| ech.insert(t).expect("representatives are independent"))
                    .collect();
                for (col, s) in srcs.iter().enumerate() {
                    let img = self.d.apply(s);
                    let (res, comb) = ech.reduce(&img);
                    assert!(
                        res.iter().all(|&x| x == 0),
                        "d_r image lands in the target page space"
                    );
                    for (row, &ri) in rep_index.iter().enumerate() {
                        if comb[ri / 64] >> (ri % 64) & 1 == 1 {
                            mat.set(row, col, true);
                        }
                    }
                }
            }
            d_r.insert(w, mat);
        }
        Ok(PageTable { r, dims, d_r })
    }

    /// The stabilized page; total dimension equals dim H(Tot).
    pub fn e_infinity(&self) -> PageTable {
        let Some((lo, hi)) = self.weight_range() else {
            return PageTable { r: 1, dims: BTreeMap::new(), d_r: BTreeMap::new() };
        };
        let r = (hi - lo) + 1;
        let page = self.page(r.max(1)).expect("page index is >= 1");
        debug_assert_eq!(page.total_dim(), self.total_homology_dim());
        page
    }
}

/// Total complex of a resolution cube, filtered by weight N - |v|.
///
/// When `reduced` is set, each vertex carries its reduced monomial basis
/// (monomials omitting the based circle) with the projected differential.
pub fn from_cube(cube: &CubeComplex, reduced: bool) -> FilteredComplex {
    let n = cube.n();
    let mut index: BTreeMap<(u64, u32), usize> = BTreeMap::new();
    let mut weights = Vec::new();
    let mut aux = Vec::new();
    let (np, nm) = cube.diagram().crossing_signs();
    for mask in 0u64..1 << n {
        let st = cube.vertex(mask);
        for m in 0u32..1 << st.n_circles() {
            if reduced && m >> st.basepoint_circle & 1 == 1 {
                continue;
            }
            let id = weights.len();
            index.insert((mask, m), id);
            weights.push(n as i32 - mask.count_ones() as i32);
            aux.push(mask.count_ones() as i32 + np as i32 - nm as i32);
        }
    }
    let dim = weights.len();
    let mut d = F2Matrix::zero(dim, dim);
    for (&(mask, m), &col) in &index {
        for i in 0..n {
            if mask >> i & 1 == 1 {
                continue;
            }
            let edge = cube.edge(mask, i);
            let tmask = mask | 1 << i;
            let bp = cube.vertex(tmask).basepoint_circle;
            for img in edge.image(m) {
                if reduced && img >> bp & 1 == 1 {
                    continue;
                }
                d.flip(index[&(tmask, img)], col);
            }
        }
    }
    FilteredComplex::new(weights, aux, d).expect("cube differential drops weight and squares to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LinkDiagram;
    use crate::khovanov::{build_cube, khr_homology};

    fn complex(weights: &[i32], entries: &[(usize, usize)]) -> FilteredComplex {
        let n = weights.len();
        let mut d = F2Matrix::zero(n, n);
        for &(row, col) in entries {
            d.set(row, col, true);
        }
        FilteredComplex::new(weights.to_vec(), vec![0; n], d).unwrap()
    }

    #[test]
    fn invalid_page_is_rejected() {
        let fc = complex(&[0], &[]);
        assert!(matches!(fc.page(0), Err(SpecSeqError::InvalidPage(0))));
    }

    #[test]
    fn zero_differential_pages_are_associated_graded() {
        let fc = complex(&[0, 0, 1, 2], &[]);
        for r in 1..5 {
            let p = fc.page(r).unwrap();
            assert_eq!(p.dims.get(&0), Some(&2));
            assert_eq!(p.dims.get(&1), Some(&1));
            assert_eq!(p.dims.get(&2), Some(&1));
        }
    }

    #[test]
    fn weight_preserving_iso_dies_on_page_one() {
        // d(g1) = g0 with equal weights: E_1 already zero
        let fc = complex(&[0, 0], &[(0, 1)]);
        let p1 = fc.page(1).unwrap();
        assert_eq!(p1.total_dim(), 0);
    }

    #[test]
    fn weight_one_iso_dies_on_page_two() {
        let fc = complex(&[0, 1], &[(0, 1)]);
        let p1 = fc.page(1).unwrap();
        assert_eq!(p1.total_dim(), 2);
        let p2 = fc.page(2).unwrap();
        assert_eq!(p2.total_dim(), 0);
        assert_eq!(fc.e_infinity().total_dim(), 0);
    }

    #[test]
    fn weight_two_differential_needs_page_two() {
        // d drops weight by 2: survives E_1, d_2 kills both
        let fc = complex(&[0, 2], &[(0, 1)]);
        let p1 = fc.page(1).unwrap();
        assert_eq!(p1.total_dim(), 2);
        let p2 = fc.page(2).unwrap();
        let d2 = &p2.d_r[&2];
        assert_eq!((d2.rows(), d2.cols()), (1, 1));
        assert!(d2.get(0, 0));
        let p3 = fc.page(3).unwrap();
        assert_eq!(p3.total_dim(), 0);
    }

    #[test]
    fn pages_are_monotone_and_stabilize() {
        // d(g1) = g0, d(g3) = g2 + g6 (weight drop 2), d(g5) = g4
        let fc = complex(&[0, 1, 1, 2, 2, 3, 0], &[(0, 1), (2, 3), (6, 3), (4, 5)]);
        let mut prev: Option<PageTable> = None;
        for r in 1..8 {
            let p = fc.page(r).unwrap();
            if let Some(q) = &prev {
                for (w, d) in &p.dims {
                    assert!(q.dims.get(w).copied().unwrap_or(0) >= *d, "page {r} weight {w}");
                }
            }
            prev = Some(p);
        }
        let spread = 3;
        let stable = fc.page(spread + 1).unwrap();
        for r in spread + 2..spread + 5 {
            assert_eq!(fc.page(r).unwrap().dims, stable.dims);
        }
        assert_eq!(fc.e_infinity().total_dim(), fc.total_homology_dim());
        assert_eq!(fc.total_homology_dim(), 1);
    }

    #[test]
    fn rejects_weight_increase() {
        let mut d = F2Matrix::zero(2, 2);
        d.set(1, 0, true); // weight 0 -> weight 1
        assert!(matches!(
            FilteredComplex::new(vec![0, 1], vec![0, 0], d),
            Err(SpecSeqError::WeightIncrease(0))
        ));
    }

    #[test]
    fn unknot_cube_is_a_single_cell() {
        let d = LinkDiagram::parse_pd("U(1)").unwrap();
        let fc = from_cube(&build_cube(&d).unwrap(), true);
        assert_eq!(fc.dim(), 1);
        assert_eq!(fc.page(1).unwrap().total_dim(), 1);
        assert_eq!(fc.e_infinity().total_dim(), 1);
    }

    #[test]
    fn trefoil_cube_weights_and_collapse() {
        let pd = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
        let d = LinkDiagram::parse_pd(pd).unwrap();
        let cube = build_cube(&d).unwrap();
        let fc = from_cube(&cube, true);
        let ws: std::collections::BTreeSet<i32> = fc.weights().iter().copied().collect();
        assert_eq!(ws, (0..=3).collect());
        // edge-only differential drops weight by exactly one: E2 = E-infinity
        let p2 = fc.page(2).unwrap();
        let pinf = fc.e_infinity();
        assert_eq!(p2.dims, pinf.dims);
        assert_eq!(p2.total_dim(), khr_homology(&d).unwrap().total_dim());
    }

    #[test]
    fn e1_matches_reduced_vertex_dims_and_khovanov_d1() {
        for pd in ["X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "X(4,1,5,2) X(2,8,3,7) X(8,5,1,6) X(6,4,7,3)"] {
            let d = LinkDiagram::parse_pd(pd).unwrap();
            let cube = build_cube(&d).unwrap();
            let fc = from_cube(&cube, true);
            let p1 = fc.page(1).unwrap();
            let n = cube.n();
            for w in 0..=n as i32 {
                let expect: usize = (0u64..1 << n)
                    .filter(|m| m.count_ones() as i32 == n as i32 - w)
                    .map(|m| 1usize << (cube.vertex(m).n_circles() - 1))
                    .sum();
                assert_eq!(p1.dims.get(&w).copied().unwrap_or(0), expect, "{pd} weight {w}");
            }
            // d_1 equals the reduced Khovanov differential entrywise, in the
            // generator order of the filtered complex
            for w in 1..=n as i32 {
                let d1 = &p1.d_r[&w];
                let expected = khovanov_block(&cube, n as i32 - w);
                assert_eq!(d1, &expected, "{pd} weight {w}");
            }
        }
    }

    /// The reduced total differential restricted to vertices of the given
    /// cardinality, rows and columns ordered as `from_cube` orders them.
    fn khovanov_block(cube: &CubeComplex, src_ones: i32) -> F2Matrix {
        let n = cube.n();
        let reduced_basis = |ones: i32| -> Vec<(u64, u32)> {
            let mut out = Vec::new();
            for mask in 0u64..1 << n {
                if mask.count_ones() as i32 != ones {
                    continue;
                }
                let st = cube.vertex(mask);
                for m in 0u32..1 << st.n_circles() {
                    if m >> st.basepoint_circle & 1 == 0 {
                        out.push((mask, m));
                    }
                }
            }
            out
        };
        let srcs = reduced_basis(src_ones);
        let tgts = reduced_basis(src_ones + 1);
        let mut out = F2Matrix::zero(tgts.len(), srcs.len());
        for (col, &(mask, m)) in srcs.iter().enumerate() {
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    continue;
                }
                let tmask = mask | 1 << i;
                let bp = cube.vertex(tmask).basepoint_circle;
                for img in cube.edge(mask, i).image(m) {
                    if img >> bp & 1 == 1 {
                        continue;
                    }
                    let row = tgts.binary_search(&(tmask, img)).unwrap();
                    out.flip(row, col);
                }
            }
        }
        out
    }
}
