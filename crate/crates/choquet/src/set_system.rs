//! Finite ordered set systems: a family ℱ of non-empty subsets covering a
//! ground set N, carrying a partial order ⪯ that need not be containment.
//!
//! The central type is [`SetSystem`]. Building one fixes an indexing
//! F_0, …, F_{m−1} that is a linear extension of ⪯ listed от the top down:
//!
//! > F_i ⪰ F_j  ⟹  i ≤ j.
//!
//! Under this indexing the incidence matrix Z (z_ij = 1 iff F_i ⪯ F_j) is
//! lower triangular with unit diagonal, so its inverse — the Möbius matrix —
//! has integer entries and is computed exactly by forward substitution.
//! Everything downstream (simple functions, Möbius inversion, the greedy
//! algorithm's minimal-index selection rule) leans on this arrangement.
//!
//! Ties between order-incomparable sets are broken deterministically:
//! larger cardinality first, then lexicographically smaller element list.
//! Two builds of the same input therefore index identically, which makes
//! greedy runs and randomized suites reproducible.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Maximum ground-set size. Subsets are stored as `u64` bitmasks.
pub const MAX_GROUND: usize = 64;

/// The ground set N: an ordered list of distinct element labels.
///
/// The label order is fixed at construction and is used only for
/// deterministic tie-breaking (never for anything semantic).
#[derive(Debug, Clone)]
pub struct GroundSet {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl GroundSet {
    /// Builds a ground set from distinct labels. At least one label and at
    /// most [`MAX_GROUND`] are required.
    pub fn new<I, S>(labels: I) -> Result<Self, BuildError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(BuildError::EmptyGround);
        }
        if labels.len() > MAX_GROUND {
            return Err(BuildError::TooManyElements(labels.len()));
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(BuildError::DuplicateElement(l.clone()));
            }
        }
        Ok(GroundSet { labels, index })
    }

    /// Ground set with labels `"1"`, `"2"`, …, `"n"` — convenient for
    /// small worked examples and generated instances.
    pub fn numbered(n: usize) -> Result<Self, BuildError> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    /// Number of elements n.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Label of element `i` (0-based).
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// All labels in element order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of a label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// A subset of the ground set, stored as a bitmask over element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_GROUND);
        ElemSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// The full set {0, …, n−1}.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < MAX_GROUND);
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn inter(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn minus(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: ElemSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Elements in ascending index order.
    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    /// Lexicographic comparison of the ascending element lists, e.g.
    /// {1,2,6} < {2,3,4} and {1} < {1,2}. Used for deterministic
    /// tie-breaking between incomparable sets.
    pub fn lex_cmp(self, other: ElemSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Iterator over the element indices of an [`ElemSet`], ascending.
pub struct ElemIter(u64);

impl Iterator for ElemIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// How the precedence relation ⪯ on the family is specified.
#[derive(Debug, Clone)]
pub enum OrderSpec {
    /// F ⪯ G only when F = G.
    Trivial,
    /// F ⪯ G iff F ⊆ G.
    Containment,
    /// Generator pairs `(i, j)` meaning F_i ⪯ F_j in *input* positions;
    /// the build closes them reflexively and transitively and rejects
    /// closures that are not antisymmetric.
    Pairs(Vec<(usize, usize)>),
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("ground set must contain at least one element")]
    EmptyGround,
    #[error("ground set has {0} elements; at most {MAX_GROUND} are supported")]
    TooManyElements(usize),
    #[error("duplicate ground element {0:?}")]
    DuplicateElement(String),
    #[error("family must contain at least one set")]
    EmptyFamily,
    #[error("family member at position {position} is empty")]
    EmptySetInFamily { position: usize },
    #[error("family members at positions {first} and {second} are equal")]
    DuplicateSet { first: usize, second: usize },
    #[error("family member at position {position} mentions an element outside the ground set")]
    ElementOutOfRange { position: usize },
    #[error("family does not cover the ground set; missing elements {missing:?}")]
    CoverViolation { missing: Vec<String> },
    #[error("order pair ({i}, {j}) out of range for a family of {m} sets")]
    PairOutOfRange { i: usize, j: usize, m: usize },
    #[error("order closure is not antisymmetric: input positions {a} and {b} lie on a cycle")]
    CycleInOrder { a: usize, b: usize },
}

/// Outcome of a structure predicate: either it holds, or it fails with a
/// witness (family indices of the violating sets) and a human-readable
/// explanation. Witnesses make property-test failures diagnosable.
#[derive(Debug, Clone)]
pub enum Check {
    Holds,
    Fails { witness: Vec<usize>, detail: String },
}

impl Check {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }

    fn fail(witness: Vec<usize>, detail: impl Into<String>) -> Check {
        Check::Fails { witness, detail: detail.into() }
    }
}

/// Outcome of the algebra test; on success it carries the atoms (family
/// indices of the minimal non-empty members).
#[derive(Debug, Clone)]
pub enum AlgebraCheck {
    Holds { atoms: Vec<usize> },
    Fails { witness: Vec<usize>, detail: String },
}

impl AlgebraCheck {
    pub fn holds(&self) -> bool {
        matches!(self, AlgebraCheck::Holds { .. })
    }

    /// Atom indices when the family is an algebra, `None` otherwise.
    pub fn atoms(&self) -> Option<&[usize]> {
        match self {
            AlgebraCheck::Holds { atoms } => Some(atoms),
            AlgebraCheck::Fails { .. } => None,
        }
    }
}

/// Full structural classification of a built system. Every predicate is
/// decided by exhaustive search at the system's (desk) scale.
#[derive(Debug, Clone)]
pub struct StructureReport {
    /// ⪯ is equality.
    pub trivially_ordered: Check,
    /// ⪯ coincides with ⊆ on the family.
    pub containment_ordered: Check,
    /// Family property: F∩G ≠ ∅ implies F∪G ∈ ℱ.
    pub weakly_union_closed: Check,
    /// Family property: F∪G ∈ ℱ for all members.
    pub union_closed: Check,
    /// ℱ ∪ {∅} contains N and is closed under union and complement.
    pub algebra: AlgebraCheck,
    /// F ⪯ G ⪯ H implies F∩H ⊆ G.
    pub consecutive: Check,
    /// Consecutive, plus joins for intersecting pairs, plus meet/join
    /// closure of every upper interval (within the union of the pair).
    pub intersection_system: Check,
}

/// An ordered set system, immutable after construction and cheap to share.
///
/// All query indices refer to the *built* ordering, which satisfies
/// F_i ⪰ F_j ⟹ i ≤ j; [`SetSystem::input_position`] maps back to the
/// caller's original family positions.
pub struct SetSystem {
    ground: GroundSet,
    sets: Vec<ElemSet>,
    /// `input_position[i]` = position of F_i in the family passed to `build`.
    input_position: Vec<usize>,
    /// `leq[i][j]` ⟺ F_i ⪯ F_j. As a 0/1 matrix this is Z, lower
    /// triangular with unit diagonal.
    leq: Vec<Vec<bool>>,
    /// Z⁻¹, exact. Lower triangular with unit diagonal.
    mobius: Vec<Vec<BigInt>>,
    /// Built set → family index.
    set_index: HashMap<u64, usize>,
    weakly_union_closed: bool,
    union_closed: bool,
    containment_ordered: bool,
    trivially_ordered: bool,
}

impl SetSystem {
    /// Validates the family, closes and checks the order, fixes the
    /// deterministic linear extension, and computes Z⁻¹ exactly.
    pub fn build(
        ground: GroundSet,
        family: Vec<ElemSet>,
        order: OrderSpec,
    ) -> Result<Arc<SetSystem>, BuildError> {
        let n = ground.size();
        let full = ElemSet::full(n);
        if family.is_empty() {
            return Err(BuildError::EmptyFamily);
        }
        let m = family.len();
        let mut cover = ElemSet::EMPTY;
        for (position, &f) in family.iter().enumerate() {
            if f.is_empty() {
                return Err(BuildError::EmptySetInFamily { position });
            }
            if !f.is_subset_of(full) {
                return Err(BuildError::ElementOutOfRange { position });
            }
            cover = cover.union(f);
        }
        for first in 0..m {
            for second in first + 1..m {
                if family[first] == family[second] {
                    return Err(BuildError::DuplicateSet { first, second });
                }
            }
        }
        if cover != full {
            let missing = full
                .minus(cover)
                .iter()
                .map(|i| ground.label(i).to_string())
                .collect();
            return Err(BuildError::CoverViolation { missing });
        }

        // Relation on input positions: rel[i][j] ⟺ F_i ⪯ F_j.
        let mut rel = vec![vec![false; m]; m];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        match &order {
            OrderSpec::Trivial => {}
            OrderSpec::Containment => {
                for i in 0..m {
                    for j in 0..m {
                        if family[i].is_subset_of(family[j]) {
                            rel[i][j] = true;
                        }
                    }
                }
            }
            OrderSpec::Pairs(pairs) => {
                for &(i, j) in pairs {
                    if i >= m || j >= m {
                        return Err(BuildError::PairOutOfRange { i, j, m });
                    }
                    rel[i][j] = true;
                }
                // Warshall transitive closure; indexed loops mirror the
                // rel[i][k] ∧ rel[k][j] ⟹ rel[i][j] formula.
                #[allow(clippy::needless_range_loop)]
                for k in 0..m {
                    for i in 0..m {
                        if rel[i][k] {
                            for j in 0..m {
                                if rel[k][j] {
                                    rel[i][j] = true;
                                }
                            }
                        }
                    }
                }
                #[allow(clippy::needless_range_loop)]
                for a in 0..m {
                    for b in a + 1..m {
                        if rel[a][b] && rel[b][a] {
                            return Err(BuildError::CycleInOrder { a, b });
                        }
                    }
                }
            }
        }

        // Linear extension, top element first: a set becomes available once
        // everything strictly above it has been emitted. Ties (always
        // between incomparable sets) go to larger cardinality, then to the
        // lexicographically smaller element list.
        let mut emitted = vec![false; m];
        let mut order_positions = Vec::with_capacity(m);
        for _ in 0..m {
            let mut best: Option<usize> = None;
            for i in 0..m {
                if emitted[i] {
                    continue;
                }
                let available =
                    (0..m).all(|j| j == i || emitted[j] || !rel[i][j]);
                if !available {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        let better = match family[i].card().cmp(&family[b].card()) {
                            Ordering::Greater => true,
                            Ordering::Less => false,
                            Ordering::Equal => family[i].lex_cmp(family[b]) == Ordering::Less,
                        };
                        if better { Some(i) } else { Some(b) }
                    }
                };
            }
            let chosen = best.expect("antisymmetric closed relation always has a maximal element");
            emitted[chosen] = true;
            order_positions.push(chosen);
        }

        let sets: Vec<ElemSet> = order_positions.iter().map(|&p| family[p]).collect();
        let mut leq = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                leq[i][j] = rel[order_positions[i]][order_positions[j]];
            }
        }
        // The built indexing must satisfy F_i ⪰ F_j ⟹ i ≤ j, i.e. Z is
        // lower triangular.
        for (i, row) in leq.iter().enumerate() {
            for (j, &below) in row.iter().enumerate() {
                assert!(!below || j <= i, "linear extension violated at ({i}, {j})");
            }
        }

        let mobius = invert_unitriangular(&leq);
        debug_assert!(check_inverse(&leq, &mobius));

        let mut set_index = HashMap::with_capacity(m);
        for (i, s) in sets.iter().enumerate() {
            set_index.insert(s.bits(), i);
        }

        let mut weakly_union_closed = true;
        let mut union_closed = true;
        for i in 0..m {
            for j in i + 1..m {
                let in_family = set_index.contains_key(&sets[i].union(sets[j]).bits());
                if !in_family {
                    union_closed = false;
                    if sets[i].intersects(sets[j]) {
                        weakly_union_closed = false;
                    }
                }
            }
        }
        let mut containment_ordered = true;
        let mut trivially_ordered = true;
        for i in 0..m {
            for j in 0..m {
                if leq[i][j] != sets[i].is_subset_of(sets[j]) {
                    containment_ordered = false;
                }
                if i != j && leq[i][j] {
                    trivially_ordered = false;
                }
            }
        }

        Ok(Arc::new(SetSystem {
            ground,
            sets,
            input_position: order_positions,
            leq,
            mobius,
            set_index,
            weakly_union_closed,
            union_closed,
            containment_ordered,
            trivially_ordered,
        }))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Ground-set size n.
    pub fn n(&self) -> usize {
        self.ground.size()
    }

    /// Family size m.
    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// The i-th member of the family in built order.
    pub fn set(&self, i: usize) -> ElemSet {
        self.sets[i]
    }

    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    /// Map from built index to the position the set had in the input family.
    pub fn input_position(&self, i: usize) -> usize {
        self.input_position[i]
    }

    /// F_i ⪯ F_j?
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Family index of a set, if it is a member.
    pub fn index_of_set(&self, s: ElemSet) -> Option<usize> {
        self.set_index.get(&s.bits()).copied()
    }

    /// The incidence matrix Z as exact integers (z_ij = 1 iff F_i ⪯ F_j).
    pub fn incidence_matrix(&self) -> Vec<Vec<BigInt>> {
        self.leq
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&b| if b { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    }

    /// The Möbius matrix Z⁻¹, exact.
    pub fn mobius_matrix(&self) -> &[Vec<BigInt>] {
        &self.mobius
    }

    /// Labels of the i-th member, in ground-element order.
    pub fn set_labels(&self, i: usize) -> Vec<String> {
        self.sets[i]
            .iter()
            .map(|e| self.ground.label(e).to_string())
            .collect()
    }

    /// Family ℱ(X) = {F ∈ ℱ : F ⊆ X} as built indices, ascending.
    pub fn restrict(&self, x: ElemSet) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.sets[i].is_subset_of(x)).collect()
    }

    /// ⊆-maximal members of ℱ(X), ascending built indices.
    ///
    /// For weakly union-closed families the result is pairwise disjoint for
    /// every X; this is asserted because several downstream formulas
    /// (extension by maximal sets, greedy forests) silently rely on it.
    pub fn maximal_in(&self, x: ElemSet) -> Vec<usize> {
        let inside = self.restrict(x);
        let maximal: Vec<usize> = inside
            .iter()
            .copied()
            .filter(|&i| {
                !inside.iter().any(|&j| j != i && self.sets[i].is_subset_of(self.sets[j]))
            })
            .collect();
        if self.weakly_union_closed {
            for (a, &i) in maximal.iter().enumerate() {
                for &j in &maximal[a + 1..] {
                    assert!(
                        !self.sets[i].intersects(self.sets[j]),
                        "maximal members of a weakly union-closed family must be pairwise disjoint"
                    );
                }
            }
        }
        maximal
    }

    /// Family property: intersecting members have their union in the family.
    pub fn is_weakly_union_closed(&self) -> bool {
        self.weakly_union_closed
    }

    /// Family property: all pairwise unions are in the family.
    pub fn is_union_closed(&self) -> bool {
        self.union_closed
    }

    /// Does ⪯ coincide with ⊆ on the family?
    pub fn is_containment_ordered(&self) -> bool {
        self.containment_ordered
    }

    /// Is ⪯ the equality order?
    pub fn is_trivially_ordered(&self) -> bool {
        self.trivially_ordered
    }

    /// Decides every structure predicate by exhaustive search and returns
    /// witnesses for the failures.
    pub fn classify(&self) -> StructureReport {
        let m = self.m();
        let n = self.n();
        let full = ElemSet::full(n);

        let trivially_ordered = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && self.leq[i][j])
            .map_or(Check::Holds, |(i, j)| {
                Check::fail(vec![i, j], format!("F_{i} ⪯ F_{j} with distinct sets"))
            });

        let containment_ordered = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .find(|&(i, j)| self.leq[i][j] != self.sets[i].is_subset_of(self.sets[j]))
            .map_or(Check::Holds, |(i, j)| {
                let detail = if self.leq[i][j] {
                    format!("F_{i} ⪯ F_{j} but F_{i} ⊄ F_{j}")
                } else {
                    format!("F_{i} ⊆ F_{j} but F_{i} ⋠ F_{j}")
                };
                Check::fail(vec![i, j], detail)
            });

        let mut weakly_union_closed = Check::Holds;
        'wuc: for i in 0..m {
            for j in i + 1..m {
                if self.sets[i].intersects(self.sets[j])
                    && self.index_of_set(self.sets[i].union(self.sets[j])).is_none()
                {
                    weakly_union_closed = Check::fail(
                        vec![i, j],
                        format!("F_{i} and F_{j} intersect but their union is not in the family"),
                    );
                    break 'wuc;
                }
            }
        }

        let mut union_closed = Check::Holds;
        'uc: for i in 0..m {
            for j in i + 1..m {
                if self.index_of_set(self.sets[i].union(self.sets[j])).is_none() {
                    union_closed = Check::fail(
                        vec![i, j],
                        format!("union of F_{i} and F_{j} is not in the family"),
                    );
                    break 'uc;
                }
            }
        }

        let algebra = self.classify_algebra(full);

        let mut consecutive = Check::Holds;
        'consec: for f in 0..m {
            for g in 0..m {
                if !self.leq[f][g] {
                    continue;
                }
                for h in 0..m {
                    if self.leq[g][h] && !self.sets[f].inter(self.sets[h]).is_subset_of(self.sets[g]) {
                        consecutive = Check::fail(
                            vec![f, g, h],
                            format!("F_{f} ⪯ F_{g} ⪯ F_{h} but F_{f} ∩ F_{h} ⊄ F_{g}"),
                        );
                        break 'consec;
                    }
                }
            }
        }

        let intersection_system = if let Check::Fails { witness, .. } = &consecutive {
            Check::fail(witness.clone(), "system is not consecutive")
        } else {
            self.classify_intersection()
        };

        StructureReport {
            trivially_ordered,
            containment_ordered,
            weakly_union_closed,
            union_closed,
            algebra,
            consecutive,
            intersection_system,
        }
    }

    fn classify_algebra(&self, full: ElemSet) -> AlgebraCheck {
        let m = self.m();
        if self.index_of_set(full).is_none() {
            return AlgebraCheck::Fails {
                witness: vec![],
                detail: "the ground set itself is not in the family".into(),
            };
        }
        for i in 0..m {
            let complement = full.minus(self.sets[i]);
            if !complement.is_empty() && self.index_of_set(complement).is_none() {
                return AlgebraCheck::Fails {
                    witness: vec![i],
                    detail: format!("complement of F_{i} is not in the family"),
                };
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if self.index_of_set(self.sets[i].union(self.sets[j])).is_none() {
                    return AlgebraCheck::Fails {
                        witness: vec![i, j],
                        detail: format!("union of F_{i} and F_{j} is not in the family"),
                    };
                }
            }
        }
        let atoms = (0..m)
            .filter(|&i| {
                !(0..m).any(|j| j != i && self.sets[j].is_subset_of(self.sets[i]))
            })
            .collect();
        AlgebraCheck::Holds { atoms }
    }

    /// Joins for intersecting pairs, and meet/join closure of upper
    /// intervals, both restricted to candidates inside the union of the
    /// pair. Existence is decided by exhaustive scan.
    fn classify_intersection(&self) -> Check {
        let m = self.m();
        for i in 0..m {
            for j in 0..m {
                if !self.sets[i].intersects(self.sets[j]) {
                    continue;
                }
                let u = self.sets[i].union(self.sets[j]);
                let join_exists = (0..m).any(|k| {
                    self.sets[k].is_subset_of(u) && self.leq[i][k] && self.leq[j][k]
                });
                if !join_exists {
                    return Check::fail(
                        vec![i, j],
                        format!("intersecting F_{i}, F_{j} have no join inside their union"),
                    );
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                if !self.leq[f][g] {
                    continue;
                }
                for h in 0..m {
                    if !self.leq[f][h] {
                        continue;
                    }
                    let u = self.sets[g].union(self.sets[h]);
                    let meet_exists = (0..m).any(|l| {
                        self.sets[l].is_subset_of(u)
                            && self.leq[f][l]
                            && self.leq[l][g]
                            && self.leq[l][h]
                    });
                    let join_exists = (0..m).any(|k| {
                        self.sets[k].is_subset_of(u) && self.leq[g][k] && self.leq[h][k]
                    });
                    if !meet_exists || !join_exists {
                        let what = if meet_exists { "join" } else { "meet" };
                        return Check::fail(
                            vec![f, g, h],
                            format!(
                                "upper interval of F_{f}: F_{g}, F_{h} have no {what} inside their union"
                            ),
                        );
                    }
                }
            }
        }
        Check::Holds
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetSystem")
            .field("n", &self.n())
            .field("m", &self.m())
            .field("sets", &self.sets)
            .finish()
    }
}

/// Inverts a lower unitriangular 0/1 matrix by forward substitution over
/// exact integers. Solving Z·M = I column by column:
/// m_ik = δ_ik − Σ_{j<i} z_ij · m_jk.
#[allow(clippy::needless_range_loop)] // indexed loops mirror the substitution formula
fn invert_unitriangular(leq: &[Vec<bool>]) -> Vec<Vec<BigInt>> {
    let m = leq.len();
    let mut inv = vec![vec![BigInt::zero(); m]; m];
    for k in 0..m {
        inv[k][k] = BigInt::one();
        for i in k + 1..m {
            let mut acc = BigInt::zero();
            for j in k..i {
                if leq[i][j] {
                    acc += &inv[j][k];
                }
            }
            inv[i][k] = -acc;
        }
    }
    inv
}

#[allow(clippy::needless_range_loop)] // entrywise matrix product check
fn check_inverse(leq: &[Vec<bool>], inv: &[Vec<BigInt>]) -> bool {
    let m = leq.len();
    for i in 0..m {
        for k in 0..m {
            let mut acc = BigInt::zero();
            for j in 0..m {
                if leq[i][j] {
                    acc += &inv[j][k];
                }
            }
            let expect = if i == k { BigInt::one() } else { BigInt::zero() };
            if acc != expect {
                return false;
            }
        }
    }
    true
}
