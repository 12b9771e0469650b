//! Planar link diagrams: PD-code parsing, validation, mirrors, resolutions,
//! and skein triples.
//!
//! A PD code is a whitespace-separated list of `X(a,b,c,d)` tokens, one per
//! crossing. The tuple lists the four strands counterclockwise starting from
//! the incoming under-strand. Strand numbering increases along each
//! component's orientation and forms a consecutive cyclic run per component.
//! `U(k)` declares k crossing-free circles (carried as synthetic negative
//! labels -1..-k) and `B(s)` marks the based strand; the basepoint defaults
//! to the lowest strand label.
//!
//! Smoothing convention: the 0-smoothing of `X(a,b,c,d)` joins (a,d) and
//! (b,c); the 1-smoothing joins (a,b) and (c,d). A crossing is positive when
//! its over-strand enters one tuple slot counterclockwise from the incoming
//! under-strand. Mirroring rotates every tuple by one position, which swaps
//! over/under strands, exchanges the roles of the two smoothings and negates
//! every crossing sign.

use std::collections::BTreeMap;

pub type Strand = i32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PdError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("strand label {0} occurs {1} times, expected exactly 2")]
    InconsistentStrands(Strand, usize),
    #[error("strand numbering broken near label {0}: labels along a component must form a consecutive cyclic run")]
    DisconnectedNumbering(Strand),
    #[error("basepoint {0} does not refer to an existing strand or circle")]
    InvalidBasepoint(Strand),
    #[error("diagram has no strands and no circles")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("vertex has length {got}, diagram has {want} crossings")]
    VertexLengthMismatch { got: usize, want: usize },
    #[error("vertex entry {0} is not a 0- or 1-resolution")]
    BadVertexEntry(u8),
    #[error("no crossing with index {0} (diagram has {1})")]
    NoSuchCrossing(usize, usize),
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("basepoint strand {0} lies on the resolved crossing")]
    BasepointOnCrossing(Strand),
}

/// A validated planar diagram with derived orientation data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[Strand; 4]>,
    n_unknotted: usize,
    basepoint: Strand,
    components: Vec<Vec<Strand>>,
    /// Per crossing, the slot (0 or 2) where the under-strand enters.
    under_in: Vec<usize>,
    /// Per crossing, the slot (1 or 3) where the over-strand enters.
    over_in: Vec<usize>,
}

/// Circles of a smoothed diagram at one cube vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionState {
    pub vertex: Vec<u8>,
    /// Partition of all strand labels (synthetic ones included) into circles,
    /// each circle sorted, circles ordered by their canonical key.
    pub circles: Vec<Vec<Strand>>,
    pub basepoint_circle: usize,
}

impl ResolutionState {
    pub fn n_circles(&self) -> usize {
        self.circles.len()
    }
}

/// Canonical circle order: real strands ascending, then synthetic circles
/// -1, -2, ... in declaration order.
fn circle_key(label: Strand) -> (u8, i64) {
    if label > 0 {
        (0, label as i64)
    } else {
        (1, -(label as i64))
    }
}

impl LinkDiagram {
    pub fn parse_pd(text: &str) -> Result<LinkDiagram, PdError> {
        let mut crossings = Vec::new();
        let mut n_unknotted = 0usize;
        let mut basepoint = None;
        for tok in text.split_whitespace() {
            let bad = || PdError::MalformedToken(tok.to_string());
            let (head, rest) = tok.split_at(1);
            let inner = rest
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(bad)?;
            let nums: Vec<i64> = inner
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            match head {
                "X" => {
                    if nums.len() != 4 || nums.iter().any(|&n| n <= 0 || n > i32::MAX as i64) {
                        return Err(bad());
                    }
                    crossings.push([nums[0] as i32, nums[1] as i32, nums[2] as i32, nums[3] as i32]);
                }
                "U" => {
                    if nums.len() != 1 || nums[0] < 0 {
                        return Err(bad());
                    }
                    n_unknotted += nums[0] as usize;
                }
                "B" => {
                    if nums.len() != 1 || nums[0] == 0 {
                        return Err(bad());
                    }
                    basepoint = Some(nums[0] as i32);
                }
                _ => return Err(bad()),
            }
        }
        LinkDiagram::from_parts(crossings, n_unknotted, basepoint)
    }

    /// Validate crossing data, trace components and derive orientations.
    pub fn from_parts(
        crossings: Vec<[Strand; 4]>,
        n_unknotted: usize,
        basepoint: Option<Strand>,
    ) -> Result<LinkDiagram, PdError> {
        if crossings.is_empty() && n_unknotted == 0 {
            return Err(PdError::Empty);
        }
        let mut occ: BTreeMap<Strand, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, t) in crossings.iter().enumerate() {
            for (s, &label) in t.iter().enumerate() {
                if label <= 0 {
                    return Err(PdError::MalformedToken(format!("X{t:?}")));
                }
                occ.entry(label).or_default().push((c, s));
            }
        }
        for (&label, slots) in &occ {
            if slots.len() != 2 {
                return Err(PdError::InconsistentStrands(label, slots.len()));
            }
        }

        // Walk directed edges: (label, target occurrence). Entering a crossing
        // at slot s exits at slot s+2 on the strand passing through.
        let other_occ = |label: Strand, at: (usize, usize)| -> (usize, usize) {
            let slots = &occ[&label];
            if slots[0] == at {
                slots[1]
            } else {
                slots[0]
            }
        };
        let trace = |start: Strand, to_second: bool| -> Vec<(Strand, (usize, usize))> {
            let first = (start, occ[&start][if to_second { 1 } else { 0 }]);
            let mut orbit = vec![first];
            loop {
                let (_, (c, s)) = *orbit.last().unwrap();
                let exit = (s + 2) % 4;
                let next_label = crossings[c][exit];
                let next = (next_label, other_occ(next_label, (c, exit)));
                if next == first {
                    break;
                }
                orbit.push(next);
            }
            orbit
        };

        let mut assigned: BTreeMap<Strand, usize> = BTreeMap::new();
        let mut components: Vec<Vec<Strand>> = Vec::new();
        let mut entered = vec![[false; 4]; crossings.len()];
        for &label in occ.keys() {
            if assigned.contains_key(&label) {
                continue;
            }
            let mut orbit = trace(label, false);
            let labels: Vec<Strand> = orbit.iter().map(|&(l, _)| l).collect();
            let lo = *labels.iter().min().unwrap();
            let hi = *labels.iter().max().unwrap();
            if (hi - lo + 1) as usize != labels.len() {
                return Err(PdError::DisconnectedNumbering(label));
            }
            let succ = |x: Strand| if x == hi { lo } else { x + 1 };
            let ascending = labels
                .iter()
                .zip(labels.iter().cycle().skip(1))
                .all(|(&a, &b)| succ(a) == b);
            if !ascending {
                orbit = trace(label, true);
                let rev: Vec<Strand> = orbit.iter().map(|&(l, _)| l).collect();
                let ok = rev
                    .iter()
                    .zip(rev.iter().cycle().skip(1))
                    .all(|(&a, &b)| succ(a) == b);
                if !ok {
                    return Err(PdError::DisconnectedNumbering(label));
                }
            }
            for &(l, (c, s)) in &orbit {
                assigned.insert(l, components.len());
                entered[c][s] = true;
            }
            components.push(orbit.iter().map(|&(l, _)| l).collect());
        }

        let mut under_in = Vec::with_capacity(crossings.len());
        let mut over_in = Vec::with_capacity(crossings.len());
        for e in &entered {
            // each crossing is entered once on the 0-2 strand, once on 1-3
            let u = match (e[0], e[2]) {
                (true, false) => 0,
                (false, true) => 2,
                _ => unreachable!("through-strand entered at both or neither end"),
            };
            let o = match (e[1], e[3]) {
                (true, false) => 1,
                (false, true) => 3,
                _ => unreachable!("over-strand entered at both or neither end"),
            };
            under_in.push(u);
            over_in.push(o);
        }

        let basepoint = match basepoint {
            Some(b) if b > 0 => {
                if !occ.contains_key(&b) {
                    return Err(PdError::InvalidBasepoint(b));
                }
                b
            }
            Some(b) => {
                if (-b) as usize > n_unknotted {
                    return Err(PdError::InvalidBasepoint(b));
                }
                b
            }
            None => match occ.keys().next() {
                Some(&min) => min,
                None => -1,
            },
        };

        Ok(LinkDiagram { crossings, n_unknotted, basepoint, components, under_in, over_in })
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_unknotted(&self) -> usize {
        self.n_unknotted
    }

    pub fn basepoint(&self) -> Strand {
        self.basepoint
    }

    pub fn tuple(&self, i: usize) -> [Strand; 4] {
        self.crossings[i]
    }

    pub fn tuples(&self) -> &[[Strand; 4]] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<Strand>] {
        &self.components
    }

    pub fn n_components(&self) -> usize {
        self.components.len() + self.n_unknotted
    }

    pub fn strands(&self) -> impl Iterator<Item = Strand> + '_ {
        self.components.iter().flatten().copied()
    }

    /// All strand labels including synthetic circle labels.
    pub fn all_labels(&self) -> Vec<Strand> {
        let mut v: Vec<Strand> = self.strands().collect();
        v.sort_unstable();
        for k in 1..=self.n_unknotted {
            v.push(-(k as i32));
        }
        v
    }

    pub fn sign(&self, i: usize) -> i8 {
        if (self.over_in[i] + 4 - self.under_in[i]) % 4 == 1 {
            1
        } else {
            -1
        }
    }

    /// (n_plus, n_minus); their sum is the crossing count.
    pub fn crossing_signs(&self) -> (usize, usize) {
        let plus = (0..self.crossings.len()).filter(|&i| self.sign(i) == 1).count();
        (plus, self.crossings.len() - plus)
    }

    /// Slot where the under-strand enters (0 or 2).
    pub fn under_in_slot(&self, i: usize) -> usize {
        self.under_in[i]
    }

    /// The mirror diagram: every tuple rotated by one position.
    pub fn mirror(&self) -> LinkDiagram {
        let rotated = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| [b, c, d, a])
            .collect();
        LinkDiagram::from_parts(rotated, self.n_unknotted, Some(self.basepoint))
            .expect("mirror of a valid diagram is valid")
    }

    /// Smoothing pairs of crossing `i` at resolution `r` (0 or 1).
    fn smoothing_pairs(&self, i: usize, r: u8) -> [(Strand, Strand); 2] {
        let [a, b, c, d] = self.crossings[i];
        if r == 0 {
            [(a, d), (b, c)]
        } else {
            [(a, b), (c, d)]
        }
    }

    /// Circles of the complete smoothing at cube vertex `v`.
    pub fn resolve(&self, v: &[u8]) -> Result<ResolutionState, DiagramError> {
        if v.len() != self.crossings.len() {
            return Err(DiagramError::VertexLengthMismatch {
                got: v.len(),
                want: self.crossings.len(),
            });
        }
        if let Some(&bad) = v.iter().find(|&&r| r > 1) {
            return Err(DiagramError::BadVertexEntry(bad));
        }
        let labels = self.all_labels();
        let index: BTreeMap<Strand, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        for (i, &r) in v.iter().enumerate() {
            for (x, y) in self.smoothing_pairs(i, r) {
                uf.union(index[&x], index[&y]);
            }
        }
        let mut by_root: BTreeMap<usize, Vec<Strand>> = BTreeMap::new();
        for (k, &l) in labels.iter().enumerate() {
            by_root.entry(uf.find(k)).or_default().push(l);
        }
        let mut circles: Vec<Vec<Strand>> = by_root.into_values().collect();
        for c in &mut circles {
            c.sort_by_key(|&l| circle_key(l));
        }
        circles.sort_by_key(|c| circle_key(c[0]));
        let basepoint_circle = circles
            .iter()
            .position(|c| c.contains(&self.basepoint))
            .expect("basepoint strand is in some circle");
        Ok(ResolutionState { vertex: v.to_vec(), circles, basepoint_circle })
    }

    /// Convenience for cube iteration: bit `i` of `mask` resolves crossing `i`.
    pub fn resolve_mask(&self, mask: u64) -> ResolutionState {
        let v: Vec<u8> = (0..self.crossings.len()).map(|i| (mask >> i & 1) as u8).collect();
        self.resolve(&v).expect("mask vertex has the right length")
    }

    /// The skein triple (K2, K1, K0) at a crossing: the diagram itself, its
    /// 0-smoothing and its 1-smoothing, renumbered canonically. K2 is the
    /// trivial resolution; the labels descend in the order the exact
    /// triangle traverses them.
    pub fn skein_triple(
        &self,
        i: usize,
    ) -> Result<(LinkDiagram, LinkDiagram, LinkDiagram), DiagramError> {
        if self.crossings.is_empty() {
            return Err(DiagramError::NoCrossings);
        }
        if i >= self.crossings.len() {
            return Err(DiagramError::NoSuchCrossing(i, self.crossings.len()));
        }
        if self.basepoint > 0 && self.crossings[i].contains(&self.basepoint) {
            return Err(DiagramError::BasepointOnCrossing(self.basepoint));
        }
        let k1 = self.smooth(i, 0);
        let k0 = self.smooth(i, 1);
        Ok((self.clone(), k1, k0))
    }

    /// Remove crossing `i`, joining its strands by the given smoothing, and
    /// renumber the result canonically.
    fn smooth(&self, i: usize, r: u8) -> LinkDiagram {
        let labels = self.all_labels();
        let index: BTreeMap<Strand, usize> =
            labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
        let mut uf = UnionFind::new(labels.len());
        for (x, y) in self.smoothing_pairs(i, r) {
            uf.union(index[&x], index[&y]);
        }
        // representative: minimal positive label in each class
        let mut class_min: BTreeMap<usize, Strand> = BTreeMap::new();
        for &l in &labels {
            if l > 0 {
                let root = uf.find(index[&l]);
                let e = class_min.entry(root).or_insert(l);
                *e = (*e).min(l);
            }
        }
        let mut rep_of: BTreeMap<Strand, Strand> = BTreeMap::new();
        for &l in &labels {
            if l > 0 {
                rep_of.insert(l, class_min[&uf.find(index[&l])]);
            } else {
                rep_of.insert(l, l);
            }
        }
        let rep = |l: Strand| -> Strand { rep_of[&l] };

        let remaining: Vec<[Strand; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != i)
            .map(|(_, t)| [rep(t[0]), rep(t[1]), rep(t[2]), rep(t[3])])
            .collect();

        // occurrences of representative labels among remaining crossings
        let mut occ: BTreeMap<Strand, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, t) in remaining.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                occ.entry(l).or_default().push((c, s));
            }
        }
        // classes of the smoothed crossing with no remaining occurrences
        // close up into free circles
        let mut freed: Vec<Strand> = Vec::new();
        for (x, y) in self.smoothing_pairs(i, r) {
            for l in [x, y] {
                let p = rep(l);
                if !occ.contains_key(&p) && !freed.contains(&p) {
                    freed.push(p);
                }
            }
        }
        let n_unknotted = self.n_unknotted + freed.len();

        // renumber by tracing components of the remaining diagram
        let mut new_label: BTreeMap<Strand, Strand> = BTreeMap::new();
        let mut next = 1i32;
        let mut visited: std::collections::HashSet<(Strand, (usize, usize))> =
            std::collections::HashSet::new();
        let reps_in_order: Vec<Strand> = occ.keys().copied().collect();
        for &start in &reps_in_order {
            if new_label.contains_key(&start) {
                continue;
            }
            let mut cur = (start, occ[&start][0]);
            loop {
                if !visited.insert(cur) {
                    break;
                }
                new_label.entry(cur.0).or_insert_with(|| {
                    let l = next;
                    next += 1;
                    l
                });
                let (c, s) = cur.1;
                let exit = (s + 2) % 4;
                let l2 = remaining[c][exit];
                let slots = &occ[&l2];
                let nxt = if slots[0] == (c, exit) { slots[1] } else { slots[0] };
                cur = (l2, nxt);
            }
        }
        let renumbered: Vec<[Strand; 4]> = remaining
            .iter()
            .map(|t| [new_label[&t[0]], new_label[&t[1]], new_label[&t[2]], new_label[&t[3]]])
            .collect();

        let basepoint = if self.basepoint > 0 {
            let p = rep(self.basepoint);
            if let Some(&nl) = new_label.get(&p) {
                nl
            } else {
                // basepoint strand closed into a free circle
                let k = freed.iter().position(|&f| f == p).unwrap();
                -((self.n_unknotted + k + 1) as i32)
            }
        } else {
            self.basepoint
        };
        LinkDiagram::from_parts(renumbered, n_unknotted, Some(basepoint))
            .expect("smoothing surgery preserves validity")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
