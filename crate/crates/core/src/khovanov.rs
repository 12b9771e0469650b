//! Cube of resolutions and Khovanov homology over F2.
//!
//! Each cube vertex carries the exterior algebra on its resolution circles,
//! with basis the subsets of circles in canonical order. An edge map either
//! merges two circles (quotient by x+y, so a monomial containing both dies)
//! or splits one (wedge with x+y). Working mod 2 removes all sign issues, so
//! the total differential is the plain sum of edge maps.
//!
//! Gradings: h(x) = |v| - n_minus and q(x) = p(x) + h(x) + n_plus - n_minus,
//! where p(empty monomial) equals the circle count and each wedge factor
//! lowers p by 2. The differential raises h by 1 and preserves q. Reduced
//! homology is the quotient by the image of wedging with the based circle,
//! with q shifted down by 1.

use crate::diagram::{DiagramError, LinkDiagram, ResolutionState, Strand};
use crate::linalg::F2Matrix;
use std::collections::BTreeMap;

pub const DEFAULT_CROSSING_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KhError {
    #[error("diagram has {0} crossings, exceeding the limit {1}")]
    TooManyCrossings(usize, usize),
    #[error("circle sets are not related by a single merge or split")]
    CircleMismatch,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Dimensions of a bigraded vector space, keyed by (h, q).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BigradedDims {
    dims: BTreeMap<(i32, i32), usize>,
}

impl BigradedDims {
    pub fn insert(&mut self, h: i32, q: i32, dim: usize) {
        if dim > 0 {
            *self.dims.entry((h, q)).or_insert(0) += dim;
        }
    }

    pub fn get(&self, h: i32, q: i32) -> usize {
        self.dims.get(&(h, q)).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn table(&self) -> Vec<(i32, i32, usize)> {
        self.dims.iter().map(|(&(h, q), &d)| (h, q, d)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i32, i32), usize)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    /// The table with both gradings negated, as on a mirror diagram.
    pub fn negated(&self) -> BigradedDims {
        let mut out = BigradedDims::default();
        for (&(h, q), &d) in &self.dims {
            out.insert(-h, -q, d);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Source circles x, y fuse into target circle z (indices in the
    /// respective canonical orders).
    Merge { x: usize, y: usize, z: usize },
    /// Source circle z divides into target circles x, y.
    Split { z: usize, x: usize, y: usize },
}

/// One cube edge: the merge/split datum plus the index map for circles
/// untouched by the smoothing change.
#[derive(Debug, Clone)]
pub struct CubeEdge {
    pub kind: EdgeKind,
    /// source circle index -> target circle index, None for the consumed ones
    pub carry: Vec<Option<usize>>,
}

impl CubeEdge {
    /// Images of a source monomial (bitmask over source circles) as target
    /// monomials; either zero, one or two terms, mod 2.
    pub fn image(&self, m: u32) -> Vec<u32> {
        match self.kind {
            EdgeKind::Merge { x, y, z } => {
                let bx = m >> x & 1;
                let by = m >> y & 1;
                if bx == 1 && by == 1 {
                    return Vec::new();
                }
                let mut out = 0u32;
                for (s, t) in self.carry.iter().enumerate() {
                    if m >> s & 1 == 1 {
                        if let Some(t) = t {
                            out |= 1 << t;
                        }
                    }
                }
                if bx == 1 || by == 1 {
                    out |= 1 << z;
                }
                vec![out]
            }
            EdgeKind::Split { z, x, y } => {
                let mut base = 0u32;
                for (s, t) in self.carry.iter().enumerate() {
                    if m >> s & 1 == 1 {
                        if let Some(t) = t {
                            base |= 1 << t;
                        }
                    }
                }
                if m >> z & 1 == 1 {
                    vec![base | 1 << x | 1 << y]
                } else {
                    vec![base | 1 << x, base | 1 << y]
                }
            }
        }
    }

    pub fn matrix(&self, source_circles: usize, target_circles: usize) -> F2Matrix {
        let mut m = F2Matrix::zero(1 << target_circles, 1 << source_circles);
        for src in 0u32..1 << source_circles {
            for img in self.image(src) {
                m.flip(img as usize, src as usize);
            }
        }
        m
    }
}

/// All 2^N resolutions of a diagram with its edge structure.
pub struct CubeComplex {
    diagram: LinkDiagram,
    vertices: Vec<ResolutionState>,
    signs: (usize, usize),
}

pub fn build_cube(d: &LinkDiagram) -> Result<CubeComplex, KhError> {
    build_cube_with_limit(d, DEFAULT_CROSSING_LIMIT)
}

pub fn build_cube_with_limit(d: &LinkDiagram, limit: usize) -> Result<CubeComplex, KhError> {
    let n = d.n_crossings();
    if n > limit {
        return Err(KhError::TooManyCrossings(n, limit));
    }
    let vertices = (0u64..1 << n).map(|mask| d.resolve_mask(mask)).collect();
    Ok(CubeComplex { diagram: d.clone(), vertices, signs: d.crossing_signs() })
}

impl CubeComplex {
    pub fn n(&self) -> usize {
        self.diagram.n_crossings()
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn vertex(&self, mask: u64) -> &ResolutionState {
        &self.vertices[mask as usize]
    }

    /// Total dimension of the unreduced cube complex.
    pub fn total_dim(&self) -> usize {
        self.vertices.iter().map(|v| 1usize << v.n_circles()).sum()
    }

    /// The (h, q) bigrading of a basis monomial at a vertex.
    pub fn gradings(&self, mask: u64, monomial: u32) -> (i32, i32) {
        let (np, nm) = self.signs;
        let st = &self.vertices[mask as usize];
        let h = mask.count_ones() as i32 - nm as i32;
        let p = st.n_circles() as i32 - 2 * monomial.count_ones() as i32;
        (h, p + h + np as i32 - nm as i32)
    }

    /// The edge from `mask` flipping crossing `i` from 0 to 1.
    pub fn edge(&self, mask: u64, i: usize) -> CubeEdge {
        debug_assert_eq!(mask >> i & 1, 0, "edge leaves a 0-resolution");
        let src = &self.vertices[mask as usize];
        let tgt = &self.vertices[(mask | 1 << i) as usize];
        edge_between(src, tgt).expect("adjacent vertices differ by one merge or split")
    }

    pub fn edge_matrix(&self, mask: u64, i: usize) -> F2Matrix {
        let src = &self.vertices[mask as usize];
        let tgt = &self.vertices[(mask | 1 << i) as usize];
        self.edge(mask, i).matrix(src.n_circles(), tgt.n_circles())
    }

    /// Check that the two edge paths around every 2-face agree mod 2.
    pub fn faces_commute(&self) -> bool {
        let n = self.n();
        for mask in 0u64..1 << n {
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    continue;
                }
                for j in i + 1..n {
                    if mask >> j & 1 == 1 {
                        continue;
                    }
                    let e_i = self.edge(mask, i);
                    let e_j = self.edge(mask, j);
                    let e_i_then_j = self.edge(mask | 1 << i, j);
                    let e_j_then_i = self.edge(mask | 1 << j, i);
                    let src = &self.vertices[mask as usize];
                    for m in 0u32..1 << src.n_circles() {
                        let mut a: Vec<u32> = e_i
                            .image(m)
                            .into_iter()
                            .flat_map(|t| e_i_then_j.image(t))
                            .collect();
                        let mut b: Vec<u32> = e_j
                            .image(m)
                            .into_iter()
                            .flat_map(|t| e_j_then_i.image(t))
                            .collect();
                        if xor_reduce(&mut a) != xor_reduce(&mut b) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn xor_reduce(terms: &mut [u32]) -> Vec<u32> {
    terms.sort_unstable();
    let mut out = Vec::new();
    let mut it = terms.iter().peekable();
    while let Some(&t) = it.next() {
        if it.peek() == Some(&&t) {
            it.next();
        } else {
            out.push(t);
        }
    }
    out
}

/// Identify how two adjacent resolutions are related and build the edge.
fn edge_between(src: &ResolutionState, tgt: &ResolutionState) -> Result<CubeEdge, KhError> {
    let tgt_of: BTreeMap<Strand, usize> = tgt
        .circles
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&s| (s, i)))
        .collect();
    let mut carry: Vec<Option<usize>> = Vec::with_capacity(src.circles.len());
    let mut moved_src: Vec<usize> = Vec::new();
    for (si, c) in src.circles.iter().enumerate() {
        let ti = tgt_of[&c[0]];
        if tgt.circles[ti] == *c {
            carry.push(Some(ti));
        } else {
            carry.push(None);
            moved_src.push(si);
        }
    }
    let moved_tgt: Vec<usize> = (0..tgt.circles.len())
        .filter(|&ti| !carry.contains(&Some(ti)))
        .collect();
    let kind = match (moved_src.len(), moved_tgt.len()) {
        (2, 1) => EdgeKind::Merge { x: moved_src[0], y: moved_src[1], z: moved_tgt[0] },
        (1, 2) => EdgeKind::Split { z: moved_src[0], x: moved_tgt[0], y: moved_tgt[1] },
        _ => return Err(KhError::CircleMismatch),
    };
    Ok(CubeEdge { kind, carry })
}

/// Matrix of the merge map fusing source circles `x`, `y` (indices).
pub fn merge_map(
    source: &[Vec<Strand>],
    target: &[Vec<Strand>],
    x: usize,
    y: usize,
) -> Result<F2Matrix, KhError> {
    if x == y || x >= source.len() || y >= source.len() || target.len() + 1 != source.len() {
        return Err(KhError::CircleMismatch);
    }
    let edge = edge_for_pair(source, target, x, y)?;
    match edge.kind {
        EdgeKind::Merge { .. } => Ok(edge.matrix(source.len(), target.len())),
        _ => Err(KhError::CircleMismatch),
    }
}

/// Matrix of the split map dividing one source circle into target circles
/// `x`, `y` (indices into `target`).
pub fn split_map(
    source: &[Vec<Strand>],
    target: &[Vec<Strand>],
    x: usize,
    y: usize,
) -> Result<F2Matrix, KhError> {
    if x == y || x >= target.len() || y >= target.len() || source.len() + 1 != target.len() {
        return Err(KhError::CircleMismatch);
    }
    let state = |circles: &[Vec<Strand>]| ResolutionState {
        vertex: Vec::new(),
        circles: circles.to_vec(),
        basepoint_circle: 0,
    };
    let edge = edge_between(&state(source), &state(target)).map_err(|_| KhError::CircleMismatch)?;
    match edge.kind {
        EdgeKind::Split { x: ex, y: ey, .. } if (ex == x && ey == y) || (ex == y && ey == x) => {
            Ok(edge.matrix(source.len(), target.len()))
        }
        _ => Err(KhError::CircleMismatch),
    }
}

fn edge_for_pair(
    source: &[Vec<Strand>],
    target: &[Vec<Strand>],
    x: usize,
    y: usize,
) -> Result<CubeEdge, KhError> {
    let state = |circles: &[Vec<Strand>]| ResolutionState {
        vertex: Vec::new(),
        circles: circles.to_vec(),
        basepoint_circle: 0,
    };
    let edge = edge_between(&state(source), &state(target)).map_err(|_| KhError::CircleMismatch)?;
    match edge.kind {
        EdgeKind::Merge { x: ex, y: ey, .. } if (ex == x && ey == y) || (ex == y && ey == x) => {
            Ok(edge)
        }
        _ => Err(KhError::CircleMismatch),
    }
}

/// Wedging with the based circle: the chain map whose image is quotiented
/// out to form the reduced complex.
pub fn phi_infinity_matrix(n_circles: usize, basepoint_circle: usize) -> F2Matrix {
    let dim = 1usize << n_circles;
    let mut m = F2Matrix::zero(dim, dim);
    for src in 0..dim {
        if src >> basepoint_circle & 1 == 0 {
            m.set(src | 1 << basepoint_circle, src, true);
        }
    }
    m
}

/// Unreduced Khovanov homology dimensions over F2.
pub fn kh_homology(d: &LinkDiagram) -> Result<BigradedDims, KhError> {
    let cube = build_cube(d)?;
    Ok(homology_of_cube(&cube, false))
}

/// Reduced Khovanov homology dimensions over F2 (q shifted by -1).
pub fn khr_homology(d: &LinkDiagram) -> Result<BigradedDims, KhError> {
    let cube = build_cube(d)?;
    Ok(homology_of_cube(&cube, true))
}

pub fn homology_of_cube(cube: &CubeComplex, reduced: bool) -> BigradedDims {
    let n = cube.n();

    // bucket generators by (h, q)
    let mut buckets: BTreeMap<(i32, i32), Vec<(u64, u32)>> = BTreeMap::new();
    for mask in 0u64..1 << n {
        let st = cube.vertex(mask);
        for m in 0u32..1 << st.n_circles() {
            if reduced && m >> st.basepoint_circle & 1 == 1 {
                continue;
            }
            buckets.entry(cube.gradings(mask, m)).or_default().push((mask, m));
        }
    }

    // per (h, q): rank of the outgoing differential block
    let mut ranks: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let empty: Vec<(u64, u32)> = Vec::new();
    for (&(h, q), sources) in &buckets {
        let targets = buckets.get(&(h + 1, q)).unwrap_or(&empty);
        if targets.is_empty() || sources.is_empty() {
            continue;
        }
        let mut mat = F2Matrix::zero(targets.len(), sources.len());
        for (col, &(mask, m)) in sources.iter().enumerate() {
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
                    let row = targets
                        .binary_search(&(tmask, img))
                        .expect("image lands in the (h+1, q) bucket");
                    mat.flip(row, col);
                }
            }
        }
        ranks.insert((h, q), crate::linalg::rank_f2(&mat));
    }

    let mut dims = BigradedDims::default();
    let shift = if reduced { -1 } else { 0 };
    for (&(h, q), gens) in &buckets {
        let out_rank = ranks.get(&(h, q)).copied().unwrap_or(0);
        let in_rank = ranks.get(&(h - 1, q)).copied().unwrap_or(0);
        dims.insert(h, q + shift, gens.len() - out_rank - in_rank);
    }
    dims
}

/// |reduced graded Euler characteristic at q = i|: the link determinant.
///
/// For knots all reduced q-gradings are even and the sum is the integer
/// sum of (-1)^(h + q/2) dims; for links the q-gradings share the odd
/// parity and the sum is purely imaginary, so the magnitude is exact.
pub fn graded_euler_det(d: &LinkDiagram) -> Result<u64, KhError> {
    let dims = khr_homology(d)?;
    let (mut re, mut im) = (0i64, 0i64);
    for ((h, q), dim) in dims.iter() {
        let sign = if h.rem_euclid(2) == 0 { 1i64 } else { -1i64 };
        let term = sign * dim as i64;
        match q.rem_euclid(4) {
            0 => re += term,
            1 => im += term,
            2 => re -= term,
            3 => im -= term,
            _ => unreachable!(),
        }
    }
    debug_assert!(re == 0 || im == 0, "mixed q parity in reduced homology");
    Ok(re.unsigned_abs().max(im.unsigned_abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    const FIG8: &str = "X(4,1,5,2) X(2,8,3,7) X(8,5,1,6) X(6,4,7,3)";

    fn circles(labels: &[&[Strand]]) -> Vec<Vec<Strand>> {
        labels.iter().map(|c| c.to_vec()).collect()
    }

    #[test]
    fn merge_two_circles_to_one() {
        // {x}, {y} -> {z = x u y}: 1 -> 1, x -> z, y -> z, x^y -> 0
        let src = circles(&[&[1, 2], &[3, 4]]);
        let tgt = circles(&[&[1, 2, 3, 4]]);
        let m = merge_map(&src, &tgt, 0, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 4));
        assert!(m.get(0, 0)); // 1 -> 1
        assert!(m.get(1, 1)); // x -> z
        assert!(m.get(1, 2)); // y -> z
        assert!(!m.get(0, 3) && !m.get(1, 3)); // x^y -> 0
    }

    #[test]
    fn merge_rejects_single_circle_source() {
        let src = circles(&[&[1, 2]]);
        let tgt = circles(&[&[1, 2]]);
        assert!(matches!(merge_map(&src, &tgt, 0, 0), Err(KhError::CircleMismatch)));
    }

    #[test]
    fn merge_rank_on_three_circles() {
        let src = circles(&[&[1], &[2], &[3]]);
        let tgt = circles(&[&[1, 2], &[3]]);
        let m = merge_map(&src, &tgt, 0, 1).unwrap();
        assert_eq!(crate::linalg::rank_f2(&m), 4); // 2^(3-1)
    }

    #[test]
    fn split_one_circle_to_two() {
        // {z} -> {x}, {y}: 1 -> x + y, z -> x^y (both lifts agree mod 2)
        let src = circles(&[&[1, 2]]);
        let tgt = circles(&[&[1], &[2]]);
        let m = split_map(&src, &tgt, 0, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        assert!(m.get(1, 0) && m.get(2, 0)); // 1 -> x + y
        assert!(m.get(3, 1)); // z -> x ^ y
        assert!(!m.get(0, 0) && !m.get(0, 1));
    }

    #[test]
    fn split_is_injective_up_to_three_circles() {
        for k in 1..=3usize {
            let src: Vec<Vec<Strand>> = (0..k).map(|i| vec![2 * i as Strand + 1]).collect();
            let mut tgt = src.clone();
            // split the last circle {2k-1} into {2k-1} and a fresh one
            tgt[k - 1] = vec![2 * k as Strand - 1];
            tgt.push(vec![2 * k as Strand]);
            let mut src2 = src.clone();
            src2[k - 1] = vec![2 * k as Strand - 1, 2 * k as Strand];
            let m = split_map(&src2, &tgt, k - 1, k).unwrap();
            assert_eq!(crate::linalg::rank_f2(&m), 1 << k);
        }
    }

    #[test]
    fn cube_of_trefoil() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap();
        let cube = build_cube(&d).unwrap();
        let by_hand: usize = (0u64..8).map(|m| 1usize << d.resolve_mask(m).n_circles()).sum();
        assert_eq!(cube.total_dim(), by_hand);
        assert!(cube.faces_commute());
    }

    #[test]
    fn cube_of_unknot() {
        let d = LinkDiagram::parse_pd("U(1)").unwrap();
        let cube = build_cube(&d).unwrap();
        assert_eq!(cube.total_dim(), 2);
    }

    #[test]
    fn crossing_limit_enforced() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap();
        assert!(matches!(
            build_cube_with_limit(&d, 2),
            Err(KhError::TooManyCrossings(3, 2))
        ));
    }

    #[test]
    fn unknot_homology() {
        let d = LinkDiagram::parse_pd("U(1)").unwrap();
        let kh = kh_homology(&d).unwrap();
        assert_eq!(kh.table(), vec![(0, -1, 1), (0, 1, 1)]);
        let khr = khr_homology(&d).unwrap();
        assert_eq!(khr.table(), vec![(0, 0, 1)]);
    }

    #[test]
    fn trefoil_homology_dimensions() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(kh_homology(&d).unwrap().total_dim(), 6);
        assert_eq!(khr_homology(&d).unwrap().total_dim(), 3);
    }

    #[test]
    fn figure_eight_reduced_dimension() {
        let d = LinkDiagram::parse_pd(FIG8).unwrap();
        assert_eq!(khr_homology(&d).unwrap().total_dim(), 5);
    }

    #[test]
    fn split_union_with_unknot_doubles_dims() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap();
        let du = LinkDiagram::parse_pd(&format!("{TREFOIL} U(1)")).unwrap();
        let kh = kh_homology(&d).unwrap();
        let khu = kh_homology(&du).unwrap();
        // tensoring with the unknot doubles every dim, shifted to q +- 1
        let mut expected = BigradedDims::default();
        for ((h, q), dim) in kh.iter() {
            expected.insert(h, q + 1, dim);
            expected.insert(h, q - 1, dim);
        }
        assert_eq!(khu, expected);
        assert_eq!(khu.total_dim(), 2 * kh.total_dim());
    }

    #[test]
    fn phi_infinity_is_a_chain_map_and_squares_to_zero() {
        for pd in [TREFOIL, "X(1,2,2,1)"] {
            let d = LinkDiagram::parse_pd(pd).unwrap();
            let cube = build_cube(&d).unwrap();
            let n = cube.n();
            for mask in 0u64..1 << n {
                let src = cube.vertex(mask);
                let phi_src = phi_infinity_matrix(src.n_circles(), src.basepoint_circle);
                assert!(phi_src.mul(&phi_src).is_zero());
                for i in 0..n {
                    if mask >> i & 1 == 1 {
                        continue;
                    }
                    let tgt = cube.vertex(mask | 1 << i);
                    let phi_tgt = phi_infinity_matrix(tgt.n_circles(), tgt.basepoint_circle);
                    let dm = cube.edge_matrix(mask, i);
                    assert_eq!(dm.mul(&phi_src), phi_tgt.mul(&dm), "{pd} mask {mask} edge {i}");
                }
            }
        }
    }

    #[test]
    fn kh_is_twice_khr_for_small_diagrams() {
        for pd in [TREFOIL, FIG8, "U(1)", "U(2)", "X(1,2,2,1)"] {
            let d = LinkDiagram::parse_pd(pd).unwrap();
            assert_eq!(
                kh_homology(&d).unwrap().total_dim(),
                2 * khr_homology(&d).unwrap().total_dim(),
                "{pd}"
            );
        }
    }

    #[test]
    fn mirror_duality_of_reduced_dims() {
        for pd in [TREFOIL, FIG8] {
            let d = LinkDiagram::parse_pd(pd).unwrap();
            let khr = khr_homology(&d).unwrap();
            let khr_mirror = khr_homology(&d.mirror()).unwrap();
            assert_eq!(khr.negated(), khr_mirror, "{pd}");
        }
    }

    #[test]
    fn graded_euler_det_of_small_knots() {
        assert_eq!(graded_euler_det(&LinkDiagram::parse_pd("U(1)").unwrap()).unwrap(), 1);
        assert_eq!(graded_euler_det(&LinkDiagram::parse_pd(TREFOIL).unwrap()).unwrap(), 3);
        assert_eq!(graded_euler_det(&LinkDiagram::parse_pd(FIG8).unwrap()).unwrap(), 5);
        assert_eq!(graded_euler_det(&LinkDiagram::parse_pd("U(2)").unwrap()).unwrap(), 0);
    }
}
