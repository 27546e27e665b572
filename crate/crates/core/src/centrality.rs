//! The term condition `TC(t, α, β)`, centralization, abelian and central
//! congruences, and the center congruence `ζ(S)`.

use std::collections::{HashMap, HashSet};

use crate::congruence::{enumerate_congruences, kernel, trace, Congruence, CongruencePair};
use crate::conjugation::{
    is_normal, ker_phi, ker_psi, metacenter, xi_relation, NormalSubsemigroup,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::semigroup::{Element, InverseSemigroup};
use crate::subset::Subset;
use crate::term::{Literal, Term};

/// A failing instance of the term condition: `t(a, u⃗) = t(a, v⃗)` but
/// `t(b, u⃗) ≠ t(b, v⃗)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TcWitness {
    pub a: Element,
    pub b: Element,
    pub u: Vec<Element>,
    pub v: Vec<Element>,
}

/// Least `(a, b)` with `a α b`, `a ∈ set`, `b ∉ set`, over all sets.
fn first_unsaturated(sets: &[Subset], alpha: &Congruence) -> Option<(Element, Element)> {
    let p = alpha.partition();
    let blocks = p.blocks();
    let block_of = p.block_indices();
    sets.iter()
        .filter_map(|set| {
            set.iter().find_map(|a| {
                blocks[block_of[a]]
                    .iter()
                    .find(|&&b| !set.contains(b))
                    .map(|&b| (a, b))
            })
        })
        .min()
}

fn saturated(sets: &[Subset], alpha: &Congruence) -> bool {
    let p = alpha.partition();
    sets.iter()
        .all(|set| (0..p.len()).all(|x| set.contains(x) == set.contains(p.label(x))))
}

fn pairs_of(beta: &Congruence) -> Vec<(Element, Element)> {
    beta.pairs()
}

/// For a term `t` and congruence `β`, the distinct sets
/// `{a : t(a, u⃗) = t(a, v⃗)}` over all `u⃗ β v⃗`. `TC(t, α, β)` holds exactly
/// when every such set is a union of `α`-classes.
#[derive(Debug, Clone)]
pub struct AgreementSets {
    sets: Vec<Subset>,
}

impl AgreementSets {
    pub fn for_term(
        s: &InverseSemigroup,
        t: &Term,
        beta: &Congruence,
        limits: &Limits,
    ) -> Result<Self> {
        let rest = t.arity().saturating_sub(1);
        let pairs = pairs_of(beta);
        let tuples = (pairs.len() as u128).saturating_pow(rest as u32);
        limits.check_budget("term condition", tuples.saturating_mul(s.order() as u128))?;

        let mut seen: HashSet<Subset> = HashSet::new();
        let mut index = vec![0usize; rest];
        let mut left = vec![0; t.arity()];
        let mut right = vec![0; t.arity()];
        loop {
            for (k, &i) in index.iter().enumerate() {
                left[k + 1] = pairs[i].0;
                right[k + 1] = pairs[i].1;
            }
            let agree = s.elements().filter(|&a| {
                left[0] = a;
                right[0] = a;
                t.eval_unchecked(s, &left) == t.eval_unchecked(s, &right)
            });
            seen.insert(Subset::from_elements(s.order(), agree));
            // odometer over β-pairs
            let mut k = 0;
            while k < rest {
                index[k] += 1;
                if index[k] < pairs.len() {
                    break;
                }
                index[k] = 0;
                k += 1;
            }
            if k == rest {
                break;
            }
        }
        let mut sets: Vec<Subset> = seen.into_iter().collect();
        sets.sort();
        Ok(AgreementSets { sets })
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn holds_for(&self, alpha: &Congruence) -> bool {
        saturated(&self.sets, alpha)
    }

    pub fn first_failure(&self, alpha: &Congruence) -> Option<(Element, Element)> {
        first_unsaturated(&self.sets, alpha)
    }
}

/// Checks `TC(t, α, β)` exhaustively; the first variable of `t` is the
/// distinguished one. Returns the lexicographically least witness
/// `(a, b, u⃗, v⃗)` on failure.
pub fn tc_check(
    s: &InverseSemigroup,
    t: &Term,
    alpha: &Congruence,
    beta: &Congruence,
    limits: &Limits,
) -> Result<Option<TcWitness>> {
    let sets = AgreementSets::for_term(s, t, beta, limits)?;
    Ok(sets
        .first_failure(alpha)
        .map(|(a, b)| least_tuple_witness(s, t, beta, a, b)))
}

/// Scans `u⃗` and then `v⃗` in lexicographic order for the failing `(a, b)`.
fn least_tuple_witness(
    s: &InverseSemigroup,
    t: &Term,
    beta: &Congruence,
    a: Element,
    b: Element,
) -> TcWitness {
    let rest = t.arity() - 1;
    let n = s.order();
    let eval = |x: Element, w: &[Element]| {
        let mut args = Vec::with_capacity(t.arity());
        args.push(x);
        args.extend_from_slice(w);
        t.eval_unchecked(s, &args)
    };
    let mut u = vec![0; rest];
    loop {
        let mut v = vec![0; rest];
        loop {
            if u.iter().zip(&v).all(|(&x, &y)| beta.related(x, y))
                && eval(a, &u) == eval(a, &v)
                && eval(b, &u) != eval(b, &v)
            {
                return TcWitness { a, b, u, v };
            }
            if !advance(&mut v, n) {
                break;
            }
        }
        assert!(
            advance(&mut u, n),
            "agreement sets reported a failure that the tuple scan cannot find"
        );
    }
}

/// Lexicographic successor in `[0, n)^k`, last coordinate fastest.
fn advance(x: &mut [usize], n: usize) -> bool {
    for i in (0..x.len()).rev() {
        x[i] += 1;
        if x[i] < n {
            return true;
        }
        x[i] = 0;
    }
    false
}

/// `α` centralizes `β`, decided by `TC(m, α, β)` for `m(x, y, z) = y x z`.
pub fn centralizes(
    s: &InverseSemigroup,
    alpha: &Congruence,
    beta: &Congruence,
    limits: &Limits,
) -> Result<bool> {
    Ok(AgreementSets::for_term(s, &Term::middle(), beta, limits)?.holds_for(alpha))
}

/// Every normal-form term of length at most `max_len` in which `x0` occurs
/// exactly once and every other position carries its own variable.
pub fn single_occurrence_terms(max_len: usize) -> Vec<Term> {
    let mut terms = Vec::new();
    for len in 1..=max_len {
        for hole in 0..len {
            for signs in 0u32..1 << len {
                let mut next = 1;
                let word = (0..len)
                    .map(|i| {
                        let var = if i == hole {
                            0
                        } else {
                            next += 1;
                            next - 1
                        };
                        Literal {
                            var,
                            inverted: signs >> i & 1 == 1,
                        }
                    })
                    .collect();
                terms.push(Term::new(len, word).expect("valid by construction"));
            }
        }
    }
    terms
}

/// The differential oracle for centralization: the term condition over all
/// [`single_occurrence_terms`] up to a length bound, for a fixed `β`.
///
/// Each term splits as `L x0^{±1} R` with disjoint variables, so the reachable
/// tuples `(L(u⃗), L(v⃗), R(u⃗), R(v⃗))` are computed exactly as products of
/// β-pair sets over the semigroup with an adjoined identity.
#[derive(Debug, Clone)]
pub struct SingleOccurrenceOracle {
    sets: Vec<Subset>,
    terms: usize,
}

impl SingleOccurrenceOracle {
    pub fn new(
        s: &InverseSemigroup,
        beta: &Congruence,
        max_len: usize,
        limits: &Limits,
    ) -> Result<Self> {
        if max_len < 3 {
            return Err(Error::WordLengthTooSmall(max_len));
        }
        let n = s.order();
        let one = n;
        let mul1 = |x: Element, y: Element| {
            if x == one {
                y
            } else if y == one {
                x
            } else {
                s.mul(x, y)
            }
        };
        let pairs = pairs_of(beta);
        let mut work: u128 = 0;
        let mut side_cache: HashMap<Vec<bool>, Vec<(Element, Element)>> = HashMap::new();
        let mut side = |signs: &[bool], work: &mut u128| -> Result<Vec<(Element, Element)>> {
            if let Some(hit) = side_cache.get(signs) {
                return Ok(hit.clone());
            }
            let mut current = Subset::from_elements((n + 1) * (n + 1), [one * (n + 1) + one]);
            for &inverted in signs {
                let mut next = Subset::empty((n + 1) * (n + 1));
                for code in current.iter() {
                    let (x, y) = (code / (n + 1), code % (n + 1));
                    for &(u, v) in &pairs {
                        let (u, v) = if inverted {
                            (s.inv(u), s.inv(v))
                        } else {
                            (u, v)
                        };
                        next.insert(mul1(x, u) * (n + 1) + mul1(y, v));
                    }
                }
                *work += (current.len() * pairs.len()) as u128;
                limits.check_budget("single-occurrence term scan", *work)?;
                current = next;
            }
            let list: Vec<(Element, Element)> =
                current.iter().map(|c| (c / (n + 1), c % (n + 1))).collect();
            side_cache.insert(signs.to_vec(), list.clone());
            Ok(list)
        };

        let terms = single_occurrence_terms(max_len);
        let mut contexts: HashSet<(Element, Element, Element, Element, bool)> = HashSet::new();
        for t in &terms {
            let word = t.word();
            let hole = word
                .iter()
                .position(|l| l.var == 0)
                .expect("x0 occurs once");
            let signs: Vec<bool> = word.iter().map(|l| l.inverted).collect();
            let left = side(&signs[..hole], &mut work)?;
            let right = side(&signs[hole + 1..], &mut work)?;
            work += (left.len() * right.len()) as u128;
            limits.check_budget("single-occurrence term scan", work)?;
            for &(lu, lv) in &left {
                for &(ru, rv) in &right {
                    contexts.insert((lu, lv, ru, rv, signs[hole]));
                }
            }
        }

        let mut seen: HashSet<Subset> = HashSet::new();
        for &(lu, lv, ru, rv, inverted) in &contexts {
            let agree = s.elements().filter(|&a| {
                let x = if inverted { s.inv(a) } else { a };
                mul1(mul1(lu, x), ru) == mul1(mul1(lv, x), rv)
            });
            seen.insert(Subset::from_elements(n, agree));
        }
        let mut sets: Vec<Subset> = seen.into_iter().collect();
        sets.sort();
        Ok(SingleOccurrenceOracle {
            sets,
            terms: terms.len(),
        })
    }

    pub fn term_count(&self) -> usize {
        self.terms
    }

    pub fn centralizes(&self, alpha: &Congruence) -> bool {
        saturated(&self.sets, alpha)
    }
}

pub fn centralizes_bruteforce(
    s: &InverseSemigroup,
    alpha: &Congruence,
    beta: &Congruence,
    max_len: usize,
    limits: &Limits,
) -> Result<bool> {
    Ok(SingleOccurrenceOracle::new(s, beta, max_len, limits)?.centralizes(alpha))
}

/// Idempotent-separating with a commutative normal kernel.
fn abelian_by_pair(s: &InverseSemigroup, alpha: &Congruence) -> bool {
    let n = kernel(s, alpha);
    trace(s, alpha).is_discrete()
        && is_normal(s, &n)
        && n.iter()
            .all(|a| n.iter().all(|b| s.mul(a, b) == s.mul(b, a)))
}

/// Idempotent-separating with kernel inside the metacenter.
fn central_by_pair(s: &InverseSemigroup, alpha: &Congruence, metacenter: &Subset) -> bool {
    trace(s, alpha).is_discrete() && kernel(s, alpha).is_subset(metacenter)
}

/// `α` centralizes itself. Also evaluates the congruence-pair
/// characterization and reports any disagreement as an error.
pub fn is_abelian_congruence(
    s: &InverseSemigroup,
    alpha: &Congruence,
    limits: &Limits,
) -> Result<bool> {
    let by_tc = centralizes(s, alpha, alpha, limits)?;
    let by_pair = abelian_by_pair(s, alpha);
    if by_tc != by_pair {
        return Err(Error::CharacterizationMismatch(format!(
            "abelian: TC(m) says {by_tc}, congruence pair says {by_pair} for {alpha:?}"
        )));
    }
    Ok(by_tc)
}

/// `α` centralizes `1_S`, cross-checked against the congruence pair.
pub fn is_central_congruence(
    s: &InverseSemigroup,
    alpha: &Congruence,
    limits: &Limits,
) -> Result<bool> {
    let by_tc = centralizes(s, alpha, &Congruence::universal(s), limits)?;
    let by_pair = central_by_pair(s, alpha, &metacenter(s));
    if by_tc != by_pair {
        return Err(Error::CharacterizationMismatch(format!(
            "central: TC(m) says {by_tc}, congruence pair says {by_pair} for {alpha:?}"
        )));
    }
    Ok(by_tc)
}

/// The center congruence together with how it was obtained.
#[derive(Debug, Clone)]
pub struct CenterCongruence {
    /// `ζ(S)`.
    pub zeta: Congruence,
    /// The largest central congruence found by scanning the congruence
    /// lattice, when the scan fit within the limits.
    pub largest_central: Option<Congruence>,
    pub skipped: Option<String>,
}

/// Computes `ζ(S)` as `ker Ψ_S`, `ker Φ_S`, `H ∩ ξ` and, when the lattice is
/// small enough, the largest central congruence; all must coincide and have
/// congruence pair `(Z(S), 0_{E(S)})`.
pub fn center_congruence(s: &InverseSemigroup, limits: &Limits) -> Result<CenterCongruence> {
    let whole = NormalSubsemigroup::whole(s);
    let by_psi = ker_psi(s, &whole);
    let by_phi = ker_phi(s, &whole);
    if by_psi != by_phi {
        return Err(Error::CharacterizationMismatch(format!(
            "ker Ψ = {by_psi:?} but ker Φ = {by_phi:?}"
        )));
    }
    let h_xi = xi_relation(s).intersect(&s.h_relation());
    if let Some((a, b)) = h_xi.difference_from(by_psi.partition()) {
        return Err(Error::CharacterizationMismatch(format!(
            "H ∩ ξ and ker Ψ differ at ({a}, {b})"
        )));
    }
    let z = metacenter(s);
    let pair = CongruencePair::of(s, &by_psi);
    if pair != CongruencePair::idempotent_separating(s, z.clone()) {
        return Err(Error::CharacterizationMismatch(format!(
            "pair of ζ is {pair:?}, expected (Z(S), 0)"
        )));
    }

    let scanned = enumerate_congruences(s, limits).and_then(|all| {
        let sets = AgreementSets::for_term(s, &Term::middle(), &Congruence::universal(s), limits)?;
        Ok((all, sets))
    });
    let (all, sets) = match scanned {
        Ok(x) => x,
        Err(e @ (Error::OrderTooLarge { .. } | Error::BudgetExceeded { .. })) => {
            return Ok(CenterCongruence {
                zeta: by_psi,
                largest_central: None,
                skipped: Some(e.to_string()),
            });
        }
        Err(e) => return Err(e),
    };
    let mut central = Vec::new();
    for alpha in all {
        let by_tc = sets.holds_for(&alpha);
        if by_tc != central_by_pair(s, &alpha, &z) {
            return Err(Error::CharacterizationMismatch(format!(
                "central: TC(m) says {by_tc} for {alpha:?}"
            )));
        }
        if by_tc {
            central.push(alpha);
        }
    }
    let largest = central
        .iter()
        .find(|c| central.iter().all(|d| d.refines(c)))
        .cloned()
        .ok_or_else(|| Error::CharacterizationMismatch("no largest central congruence".into()))?;
    if largest != by_psi {
        return Err(Error::CharacterizationMismatch(format!(
            "largest central {largest:?} differs from ker Ψ {by_psi:?}"
        )));
    }
    Ok(CenterCongruence {
        zeta: by_psi,
        largest_central: Some(largest),
        skipped: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::congruence_from_pair;
    use crate::construct::{brandt, chain, cyclic_group, symmetric_group};
    use crate::pbij::symmetric_inverse_monoid;

    fn b2() -> InverseSemigroup {
        brandt(&cyclic_group(1).unwrap(), 2).unwrap()
    }

    /// Direct reading of the implication, α-pairs outermost.
    fn tc_naive(
        s: &InverseSemigroup,
        t: &Term,
        alpha: &Congruence,
        beta: &Congruence,
    ) -> Option<TcWitness> {
        let rest = t.arity() - 1;
        let n = s.order();
        let eval = |x, w: &[Element]| {
            let mut args = vec![x];
            args.extend_from_slice(w);
            t.eval(s, &args).unwrap()
        };
        for (a, b) in alpha.pairs() {
            let mut u = vec![0; rest];
            loop {
                let mut v = vec![0; rest];
                loop {
                    let related = u.iter().zip(&v).all(|(&x, &y)| beta.related(x, y));
                    if related && eval(a, &u) == eval(a, &v) && eval(b, &u) != eval(b, &v) {
                        return Some(TcWitness { a, b, u, v });
                    }
                    if !advance(&mut v, n) {
                        break;
                    }
                }
                if !advance(&mut u, n) {
                    break;
                }
            }
        }
        None
    }

    #[test]
    fn spec_examples() {
        let lim = Limits::default();
        let s = b2();
        let one = Congruence::universal(&s);
        let zero = Congruence::identity(&s);
        let x0 = Term::positive(3, &[0]).unwrap();
        assert!(tc_check(&s, &x0, &one, &one, &lim).unwrap().is_none());
        assert!(tc_check(&s, &Term::middle(), &zero, &one, &lim)
            .unwrap()
            .is_none());
        let w = tc_check(&s, &Term::middle(), &one, &one, &lim)
            .unwrap()
            .unwrap();
        assert_eq!(Some(w), tc_naive(&s, &Term::middle(), &one, &one));

        let z4 = cyclic_group(4).unwrap();
        assert!(centralizes(
            &z4,
            &Congruence::universal(&z4),
            &Congruence::universal(&z4),
            &lim
        )
        .unwrap());
        let c2 = chain(2).unwrap();
        assert!(!centralizes(
            &c2,
            &Congruence::universal(&c2),
            &Congruence::universal(&c2),
            &lim
        )
        .unwrap());
    }

    #[test]
    fn witnesses_match_naive_scan() {
        let lim = Limits::default();
        for s in [b2(), symmetric_group(3).unwrap(), chain(3).unwrap()] {
            let all = enumerate_congruences(&s, &lim).unwrap();
            for t in [Term::middle(), Term::left(), Term::right()] {
                for alpha in &all {
                    for beta in &all {
                        assert_eq!(
                            tc_check(&s, &t, alpha, beta, &lim).unwrap(),
                            tc_naive(&s, &t, alpha, beta)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn single_occurrence_terms_count() {
        // k positions for x0 times 2^k sign patterns
        assert_eq!(
            single_occurrence_terms(5).len(),
            (1..=5).map(|k| k << k).sum::<usize>()
        );
        assert!(single_occurrence_terms(3)
            .iter()
            .all(|t| t.occurrences(0) == 1));
    }

    #[test]
    fn oracle_agrees_on_small_semigroups() {
        let lim = Limits::default();
        assert!(matches!(
            centralizes_bruteforce(
                &b2(),
                &Congruence::identity(&b2()),
                &Congruence::identity(&b2()),
                2,
                &lim
            ),
            Err(Error::WordLengthTooSmall(2))
        ));
        for s in [
            b2(),
            symmetric_group(3).unwrap(),
            chain(3).unwrap(),
            symmetric_inverse_monoid(2).unwrap().semigroup,
        ] {
            let all = enumerate_congruences(&s, &lim).unwrap();
            for beta in &all {
                let oracle = SingleOccurrenceOracle::new(&s, beta, 5, &lim).unwrap();
                for alpha in &all {
                    assert_eq!(
                        oracle.centralizes(alpha),
                        centralizes(&s, alpha, beta, &lim).unwrap(),
                        "{alpha:?} {beta:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn abelian_and_central() {
        let lim = Limits::default();
        let is2 = symmetric_inverse_monoid(2).unwrap().semigroup;
        assert!(!is_abelian_congruence(&is2, &Congruence::universal(&is2), &lim).unwrap());
        assert!(is_abelian_congruence(&is2, &Congruence::identity(&is2), &lim).unwrap());
        let s = b2();
        let central: Vec<_> = enumerate_congruences(&s, &lim)
            .unwrap()
            .into_iter()
            .filter(|a| is_central_congruence(&s, a, &lim).unwrap())
            .collect();
        assert_eq!(central, vec![Congruence::identity(&s)]);

        let s3 = symmetric_group(3).unwrap();
        for alpha in enumerate_congruences(&s3, &lim).unwrap() {
            let class = kernel(&s3, &alpha);
            assert_eq!(
                is_central_congruence(&s3, &alpha, &lim).unwrap(),
                class.is_subset(&s3.classical_center())
            );
        }
    }

    #[test]
    fn center_examples() {
        let lim = Limits::default();
        let z4 = cyclic_group(4).unwrap();
        assert!(center_congruence(&z4, &lim).unwrap().zeta.is_universal());
        let c3 = chain(3).unwrap();
        assert!(center_congruence(&c3, &lim).unwrap().zeta.is_identity());
        let is2 = symmetric_inverse_monoid(2).unwrap().semigroup;
        let c = center_congruence(&is2, &lim).unwrap();
        assert!(c.zeta.is_identity());
        assert_eq!(c.largest_central, Some(c.zeta.clone()));

        let tight = Limits::default().with_budget(10);
        let c = center_congruence(&is2, &tight).unwrap();
        assert!(c.largest_central.is_none() && c.skipped.is_some());
        assert!(c.zeta.is_identity());
    }

    #[test]
    fn abelian_pairs_from_commutative_normals() {
        let lim = Limits::default();
        let s = symmetric_inverse_monoid(2).unwrap().semigroup;
        for n in crate::conjugation::enumerate_normal_subsemigroups(&s, &lim).unwrap() {
            let m = n.members();
            if m.iter()
                .all(|a| m.iter().all(|b| s.mul(a, b) == s.mul(b, a)))
            {
                let alpha =
                    congruence_from_pair(&s, &CongruencePair::idempotent_separating(&s, m.clone()))
                        .unwrap();
                assert!(is_abelian_congruence(&s, &alpha, &lim).unwrap());
            }
        }
    }
}
