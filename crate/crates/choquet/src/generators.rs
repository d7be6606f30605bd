//! Seeded instance generators and worked fixtures for the test suites.
//!
//! Every generator draws through a caller-supplied [`Rng`], so a fixed
//! seed reproduces each instance bit for bit. Internal collections are
//! kept sorted (never hashed) to make generation independent of platform
//! iteration order. Class membership — weak union closure, union
//! closure, being an algebra — is guaranteed by construction: families
//! are closed under the defining operation until a fixpoint is reached,
//! falling back to a small canonical member of the class when the
//! closure overshoots the requested size.

use crate::rational::Rational;
use crate::set_system::{ElemSet, GroundSet, OrderSpec, SetSystem};
use crate::valuation::{cumulative, Valuation, Weighting};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Builds over a numbered ground set with input sets listed by mask order.
fn build_sorted(n: usize, sets: &BTreeSet<u64>, order: OrderSpec) -> Arc<SetSystem> {
    let ground = GroundSet::numbered(n).expect("valid ground size");
    let family: Vec<ElemSet> = sets.iter().map(|&b| ElemSet::from_bits(b)).collect();
    SetSystem::build(ground, family, order).expect("generated family must build")
}

/// Inserts a singleton for every element not yet covered. Singletons of
/// uncovered elements are disjoint from every existing member, so this
/// never disturbs closure under unions of intersecting pairs.
fn cover_with_singletons(n: usize, sets: &mut BTreeSet<u64>) {
    let covered = sets.iter().fold(0u64, |acc, &b| acc | b);
    for e in 0..n {
        if covered & (1 << e) == 0 {
            sets.insert(1 << e);
        }
    }
}

fn random_nonempty_subset<R: Rng>(rng: &mut R, n: usize) -> ElemSet {
    ElemSet::from_bits(rng.gen_range(1..(1u64 << n)))
}

/// A rational with small numerator and denominator; numerators are drawn
/// from −6..=6 when `negatives` is set and 0..=6 otherwise.
pub fn random_rational<R: Rng>(rng: &mut R, negatives: bool) -> Rational {
    let lo: i64 = if negatives { -6 } else { 0 };
    let num = rng.gen_range(lo..=6);
    let den = rng.gen_range(1i64..=4);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_weighting<R: Rng>(rng: &mut R, n: usize, negatives: bool) -> Weighting {
    Weighting::new((0..n).map(|_| random_rational(rng, negatives)).collect())
}

/// Random family of distinct non-empty sets, padded with singletons to
/// cover the ground set, under the containment order.
pub fn random_containment_system<R: Rng>(rng: &mut R, n: usize, m_max: usize) -> Arc<SetSystem> {
    assert!(m_max > n, "need room for covering singletons");
    let target = rng.gen_range(1..=m_max - n);
    let mut sets = BTreeSet::new();
    for _ in 0..4 * target {
        if sets.len() >= target {
            break;
        }
        sets.insert(random_nonempty_subset(rng, n).bits());
    }
    cover_with_singletons(n, &mut sets);
    build_sorted(n, &sets, OrderSpec::Containment)
}

/// Random family under a random order: with equal chance the trivial
/// order, containment, or relation pairs drawn consistently with a hidden
/// random linear order (which keeps the closure antisymmetric).
pub fn random_system<R: Rng>(rng: &mut R, n: usize, m_max: usize) -> Arc<SetSystem> {
    assert!(m_max > n, "need room for covering singletons");
    let target = rng.gen_range(1..=m_max - n);
    let mut sets = BTreeSet::new();
    for _ in 0..4 * target {
        if sets.len() >= target {
            break;
        }
        sets.insert(random_nonempty_subset(rng, n).bits());
    }
    cover_with_singletons(n, &mut sets);
    let m = sets.len();
    let order = match rng.gen_range(0..3) {
        0 => OrderSpec::Trivial,
        1 => OrderSpec::Containment,
        _ => {
            let mut rank: Vec<usize> = (0..m).collect();
            rank.shuffle(rng);
            let mut pairs = BTreeSet::new();
            for _ in 0..2 * m {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(0..m);
                if rank[a] < rank[b] {
                    pairs.insert((a, b));
                } else if rank[b] < rank[a] {
                    pairs.insert((b, a));
                }
            }
            OrderSpec::Pairs(pairs.into_iter().collect())
        }
    };
    build_sorted(n, &sets, order)
}

/// Closes a family under unions of intersecting pairs (weak union
/// closure) or under all unions. Returns `None` when the closure
/// overshoots `limit` members.
fn close_under_unions(
    sets: &mut BTreeSet<u64>,
    only_intersecting: bool,
    limit: usize,
) -> Option<()> {
    loop {
        let members: Vec<u64> = sets.iter().copied().collect();
        let mut fresh = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if (!only_intersecting || a & b != 0) && !sets.contains(&(a | b)) {
                    fresh.push(a | b);
                }
            }
        }
        if fresh.is_empty() {
            return Some(());
        }
        for b in fresh {
            sets.insert(b);
            if sets.len() > limit {
                return None;
            }
        }
    }
}

/// Weakly union-closed family under containment: random seeds plus
/// covering singletons, closed under unions of intersecting pairs.
/// Falls back to {N} plus all singletons when closure keeps overshooting.
pub fn random_wuc_system<R: Rng>(rng: &mut R, n: usize, m_max: usize) -> Arc<SetSystem> {
    assert!(m_max > n, "need room for covering singletons");
    for _ in 0..16 {
        let mut sets = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=3) {
            sets.insert(random_nonempty_subset(rng, n).bits());
        }
        cover_with_singletons(n, &mut sets);
        if close_under_unions(&mut sets, true, m_max).is_some() {
            let sys = build_sorted(n, &sets, OrderSpec::Containment);
            debug_assert!(sys.is_weakly_union_closed());
            return sys;
        }
    }
    let mut sets: BTreeSet<u64> = (0..n).map(|e| 1u64 << e).collect();
    sets.insert(ElemSet::full(n).bits());
    build_sorted(n, &sets, OrderSpec::Containment)
}

/// Union-closed family under containment; falls back to a maximal chain.
pub fn random_union_closed_system<R: Rng>(rng: &mut R, n: usize, m_max: usize) -> Arc<SetSystem> {
    assert!(m_max > n, "need room for covering singletons");
    for _ in 0..16 {
        let mut sets = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=3) {
            sets.insert(random_nonempty_subset(rng, n).bits());
        }
        cover_with_singletons(n, &mut sets);
        if close_under_unions(&mut sets, false, m_max).is_some() {
            let sys = build_sorted(n, &sets, OrderSpec::Containment);
            debug_assert!(sys.is_union_closed());
            return sys;
        }
    }
    let mut sets = BTreeSet::new();
    let mut prefix = 0u64;
    for e in 0..n {
        prefix |= 1 << e;
        sets.insert(prefix);
    }
    build_sorted(n, &sets, OrderSpec::Containment)
}

/// Algebra generated by a random partition of the ground set into at most
/// `max_atoms` blocks: the family of all non-empty unions of blocks,
/// under containment.
pub fn random_algebra<R: Rng>(rng: &mut R, n: usize, max_atoms: usize) -> Arc<SetSystem> {
    let k = rng.gen_range(1..=max_atoms.min(n));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut atom_mask = vec![0u64; k];
    for (i, &e) in perm.iter().enumerate() {
        let block = if i < k { i } else { rng.gen_range(0..k) };
        atom_mask[block] |= 1 << e;
    }
    let mut sets = BTreeSet::new();
    for choice in 1u64..(1 << k) {
        let mut union = 0u64;
        for (b, &mask) in atom_mask.iter().enumerate() {
            if choice & (1 << b) != 0 {
                union |= mask;
            }
        }
        sets.insert(union);
    }
    let sys = build_sorted(n, &sets, OrderSpec::Containment);
    debug_assert!(sys.classify().algebra.holds());
    sys
}

/// All union-closed covering families on a numbered ground set of size n,
/// by brute force over the 2^(2^n − 1) candidate families — practical for
/// n ≤ 3 only. Families are returned as mask lists in ascending order.
pub fn enumerate_union_closed_families(n: usize) -> Vec<Vec<ElemSet>> {
    assert!(n <= 3, "exhaustive enumeration is exponential in 2^n");
    let k = (1usize << n) - 1; // candidate non-empty subsets, masks 1..=k
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();
    for choice in 1u64..(1 << k) {
        let family: Vec<u64> = (1..=k as u64).filter(|s| choice & (1 << (s - 1)) != 0).collect();
        let covered = family.iter().fold(0u64, |acc, &s| acc | s);
        if covered != full {
            continue;
        }
        let closed = family.iter().enumerate().all(|(i, &a)| {
            family[i + 1..].iter().all(|&b| family.binary_search(&(a | b)).is_ok())
        });
        if closed {
            out.push(family.into_iter().map(ElemSet::from_bits).collect());
        }
    }
    out
}

/// Non-negative density on the family, as a valuation.
pub fn random_density<R: Rng>(rng: &mut R, sys: &Arc<SetSystem>) -> Valuation {
    let values = (0..sys.m()).map(|_| random_rational(rng, false)).collect();
    Valuation::new(Arc::clone(sys), values).expect("length matches")
}

/// Belief: the cumulative of a random density.
pub fn random_belief<R: Rng>(rng: &mut R, sys: &Arc<SetSystem>) -> Valuation {
    cumulative(&random_density(rng, sys)).expect("densities are non-negative")
}

/// Arbitrary-sign valuation.
pub fn random_valuation<R: Rng>(rng: &mut R, sys: &Arc<SetSystem>) -> Valuation {
    let values = (0..sys.m()).map(|_| random_rational(rng, true)).collect();
    Valuation::new(Arc::clone(sys), values).expect("length matches")
}

/// Capacity: random non-negative values pushed up to their isotone
/// envelope. Indices ascend from maximal members downward, so a single
/// sweep from the end suffices: each member absorbs the largest completed
/// value among its predecessors.
pub fn random_capacity<R: Rng>(rng: &mut R, sys: &Arc<SetSystem>) -> Valuation {
    let m = sys.m();
    let mut values: Vec<Rational> = (0..m).map(|_| random_rational(rng, false)).collect();
    for j in (0..m).rev() {
        for k in j + 1..m {
            if sys.leq(k, j) && values[k] > values[j] {
                values[j] = values[k].clone();
            }
        }
    }
    let v = Valuation::new(Arc::clone(sys), values).expect("length matches");
    debug_assert!(v.is_capacity());
    v
}

/// Probability on an algebra: positive random masses on the atoms,
/// normalized to total 1 and summed up the containment order. Panics if
/// the system is not an algebra.
pub fn random_probability<R: Rng>(rng: &mut R, sys: &Arc<SetSystem>) -> Valuation {
    let report = sys.classify();
    let atoms = report.algebra.atoms().expect("system must be an algebra").to_vec();
    let masses: Vec<Rational> = atoms
        .iter()
        .map(|_| {
            let num = rng.gen_range(1i64..=6);
            let den = rng.gen_range(1i64..=4);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect();
    let total: Rational = masses.iter().cloned().sum();
    let values: Vec<Rational> = (0..sys.m())
        .map(|i| {
            atoms
                .iter()
                .zip(&masses)
                .filter(|(&a, _)| sys.set(a).is_subset_of(sys.set(i)))
                .map(|(_, mass)| mass / &total)
                .sum()
        })
        .collect();
    Valuation::new(Arc::clone(sys), values).expect("length matches")
}

/// Eight sets on six points whose order relation is a hexagonal diagram
/// strictly coarser than containment: {1,2} on top, {6} at the bottom.
/// It is an intersection system but neither weakly union-closed nor
/// containment-ordered, so it exercises every code path that must not
/// silently assume those properties.
pub fn hexagon_system() -> Arc<SetSystem> {
    let ground = GroundSet::numbered(6).expect("six elements");
    let family: Vec<ElemSet> = [
        &[3usize, 4][..],
        &[1, 2, 3],
        &[0, 1],
        &[0, 1, 5],
        &[0, 5],
        &[5],
        &[1, 2, 5],
        &[0, 4],
    ]
    .iter()
    .map(|elems| ElemSet::from_indices(elems.iter().copied()))
    .collect();
    // Cover pairs in input positions: {6} below {4,5}, {1,6}, {2,3,6};
    // then up the two flanks of the hexagon to {1,2} on top.
    let pairs = vec![
        (5, 0),
        (5, 4),
        (5, 6),
        (0, 1),
        (0, 7),
        (4, 7),
        (4, 3),
        (6, 1),
        (6, 3),
        (7, 2),
        (1, 2),
        (3, 2),
    ];
    SetSystem::build(ground, family, OrderSpec::Pairs(pairs)).expect("fixture builds")
}

/// Weakly union-closed family on five points holding two disjoint members
/// {1,2} and {3,5} whose union is not a member: the canonical source of
/// valuations whose power-set extension fails to be monotone.
pub fn split_cover_system() -> Arc<SetSystem> {
    let ground = GroundSet::numbered(5).expect("five elements");
    let family: Vec<ElemSet> = [
        &[0usize, 1, 2, 3, 4][..],
        &[0, 1, 2, 3],
        &[1, 2, 3, 4],
        &[0, 2, 3, 4],
        &[0, 1, 3],
        &[1, 2, 3],
        &[2, 3, 4],
        &[0, 1],
        &[2, 4],
        &[1],
        &[4],
    ]
    .iter()
    .map(|elems| ElemSet::from_indices(elems.iter().copied()))
    .collect();
    SetSystem::build(ground, family, OrderSpec::Containment).expect("fixture builds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn generated_classes_hold_by_construction() {
        let mut r = rng(7);
        for _ in 0..25 {
            let n = r.gen_range(1..=6);
            let wuc = random_wuc_system(&mut r, n, 40);
            assert!(wuc.is_weakly_union_closed());
            assert!(wuc.is_containment_ordered());
            let uc = random_union_closed_system(&mut r, n, 40);
            assert!(uc.is_union_closed());
            let alg = random_algebra(&mut r, n, 5);
            assert!(alg.classify().algebra.holds());
            let any = random_system(&mut r, n, 40);
            assert!(any.m() <= 40);
            let cont = random_containment_system(&mut r, n, 40);
            assert!(cont.is_containment_ordered());
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let mut a = rng(42);
        let mut b = rng(42);
        for _ in 0..10 {
            let sa = random_system(&mut a, 5, 30);
            let sb = random_system(&mut b, 5, 30);
            assert_eq!(sa.m(), sb.m());
            for i in 0..sa.m() {
                assert_eq!(sa.set(i), sb.set(i));
                for j in 0..sa.m() {
                    assert_eq!(sa.leq(i, j), sb.leq(i, j));
                }
            }
            let va = random_valuation(&mut a, &sa);
            let vb = random_valuation(&mut b, &sb);
            assert_eq!(va.values(), vb.values());
        }
    }

    #[test]
    fn random_values_have_the_advertised_shape() {
        let mut r = rng(3);
        let sys = random_wuc_system(&mut r, 4, 20);
        for _ in 0..20 {
            assert!(random_belief(&mut r, &sys).is_belief());
            assert!(random_capacity(&mut r, &sys).is_capacity());
            let d = random_density(&mut r, &sys);
            assert!(d.values().iter().all(|x| x >= &Rational::from_integer(0.into())));
        }
    }

    #[test]
    fn random_probability_is_a_probability() {
        let mut r = rng(11);
        for _ in 0..10 {
            let n = r.gen_range(1..=6);
            let sys = random_algebra(&mut r, n, 5);
            let p = random_probability(&mut r, &sys);
            // Total mass 1 on the full set, additivity over atoms.
            let full = sys
                .index_of_set(ElemSet::full(sys.n()))
                .expect("algebras contain the ground set");
            assert_eq!(p.value(full), &Rational::from_integer(1.into()));
            assert!(crate::integral::lehrer_integral(
                &p,
                &Weighting::constant(sys.n(), &Rational::from_integer(1.into()))
            )
            .is_ok());
        }
    }

    #[test]
    fn exhaustive_union_closed_enumeration_is_sound() {
        // n = 1: only {{1}}. n = 2: {12}, {1,2,12}, {1,12}, {2,12} — the
        // covering union-closed families on two points.
        assert_eq!(enumerate_union_closed_families(1).len(), 1);
        let two = enumerate_union_closed_families(2);
        assert_eq!(two.len(), 4);
        for fam in &two {
            let covered = fam.iter().fold(0u64, |acc, s| acc | s.bits());
            assert_eq!(covered, 3);
            for a in fam {
                for b in fam {
                    assert!(fam.contains(&a.union(*b)));
                }
            }
        }
        let three = enumerate_union_closed_families(3);
        assert!(!three.is_empty());
        for fam in &three {
            for a in fam {
                for b in fam {
                    assert!(fam.contains(&a.union(*b)));
                }
            }
        }
    }

    #[test]
    fn fixtures_classify_as_documented() {
        let hex = hexagon_system();
        let report = hex.classify();
        assert!(report.intersection_system.holds());
        assert!(!report.containment_ordered.holds());
        assert!(!report.weakly_union_closed.holds());

        let split = split_cover_system();
        assert!(split.is_weakly_union_closed());
        assert!(split.is_containment_ordered());
    }
}
