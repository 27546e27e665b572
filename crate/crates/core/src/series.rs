//! Upper central series, nilpotence and solvability, the KMM kernel series,
//! Mal'cev words and tolerances, and the `ζ_n = H ∩ μ_n` checker.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::centrality::{center_congruence, is_abelian_congruence};
use crate::congruence::{enumerate_congruences, kernel, quotient, Congruence};
use crate::error::{Error, Result};
use crate::group;
use crate::limits::Limits;
use crate::semigroup::{Element, InverseSemigroup};
use crate::subset::Subset;
use crate::term::{Literal, Term};
use crate::tolerance::Tolerance;

/// Highest Mal'cev level [`malcev_words`] will build.
pub const MALCEV_GUARD: usize = 4;

/// `ζ_0 ⊆ ζ_1 ⊆ …`, strictly increasing, ending where the next term would
/// repeat the last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSeries {
    pub terms: Vec<Congruence>,
    pub stabilized: bool,
}

impl CentralSeries {
    /// `ζ_n`; past the end the series is constant.
    pub fn term(&self, n: usize) -> &Congruence {
        &self.terms[n.min(self.terms.len() - 1)]
    }

    /// Least `n` with `ζ_n = 1_S`.
    pub fn class(&self) -> Option<usize> {
        self.terms.iter().position(Congruence::is_universal)
    }
}

/// `ζ_{i+1}` is the preimage of `ζ(S/ζ_i)` under the projection.
pub fn upper_central_series(s: &InverseSemigroup, limits: &Limits) -> Result<CentralSeries> {
    let mut terms = vec![Congruence::identity(s)];
    loop {
        let last = terms.last().expect("nonempty");
        let q = quotient(s, last);
        let center = center_congruence(&q.semigroup, limits)?.zeta;
        let next = q.preimage(&center);
        if &next == last {
            return Ok(CentralSeries {
                terms,
                stabilized: true,
            });
        }
        if !last.refines(&next) {
            return Err(Error::TheoremMismatch(format!(
                "central series is not ascending at step {}",
                terms.len()
            )));
        }
        terms.push(next);
    }
}

/// Nilpotency class, or `None` if the upper central series stalls below
/// `1_S`. Cross-checked against the classical class of `S` as a group.
pub fn is_nilpotent(s: &InverseSemigroup, limits: &Limits) -> Result<Option<usize>> {
    let class = upper_central_series(s, limits)?.class();
    let classical = if s.is_group() {
        group::nilpotency_class(s)
    } else {
        None
    };
    if class != classical {
        return Err(Error::TheoremMismatch(format!(
            "nilpotence class {class:?} but group-theoretic class {classical:?}"
        )));
    }
    Ok(class)
}

/// Length of a shortest chain `0_S = α_0 ⊂ … ⊂ α_k = 1_S` with every
/// `α_{i+1}/α_i` abelian in `S/α_i`, by breadth-first search over the
/// congruence lattice. Cross-checked against the derived length of `S` as a
/// group.
pub fn is_solvable(s: &InverseSemigroup, limits: &Limits) -> Result<Option<usize>> {
    let all = enumerate_congruences(s, limits)?;
    let mut dist: HashMap<&Congruence, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(&all[0], 0);
    queue.push_back(&all[0]);
    let mut length = None;
    while let Some(alpha) = queue.pop_front() {
        let d = dist[alpha];
        if alpha.is_universal() {
            length = Some(d);
            break;
        }
        let q = quotient(s, alpha);
        for beta in &all {
            if dist.contains_key(beta) || !alpha.refines(beta) {
                continue;
            }
            if is_abelian_congruence(&q.semigroup, &q.relative(beta), limits)? {
                dist.insert(beta, d + 1);
                queue.push_back(beta);
            }
        }
    }
    let classical = if s.is_group() {
        group::derived_length(s)
    } else {
        None
    };
    if length != classical {
        return Err(Error::TheoremMismatch(format!(
            "solvable length {length:?} but group-theoretic derived length {classical:?}"
        )));
    }
    Ok(length)
}

/// `Z_n(S) = ker ζ_n(S)` and the least `n` with `Z_n(S) = S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmmSeries {
    pub kernels: Vec<Subset>,
    pub class: Option<usize>,
}

pub fn kmm_kernel_series(s: &InverseSemigroup, limits: &Limits) -> Result<KmmSeries> {
    let series = upper_central_series(s, limits)?;
    let kernels: Vec<Subset> = series.terms.iter().map(|c| kernel(s, c)).collect();
    let class = kernels.iter().position(|k| k.len() == s.order());
    Ok(KmmSeries { kernels, class })
}

/// `λ_n` and `ρ_n` over the variables `a = x0`, `b = x1`, `z_i = x{i+2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalcevWord {
    pub level: usize,
    pub lambda: Term,
    pub rho: Term,
}

pub fn malcev_words(n: usize) -> Result<MalcevWord> {
    if n > MALCEV_GUARD {
        return Err(Error::LevelTooLarge {
            level: n,
            max: MALCEV_GUARD,
        });
    }
    let (mut lambda, mut rho) = (vec![Literal::pos(0)], vec![Literal::pos(1)]);
    for k in 0..n {
        let z = Literal::pos(k + 2);
        let next_lambda = [&lambda[..], &[z], &rho[..]].concat();
        let next_rho = [&rho[..], &[z], &lambda[..]].concat();
        lambda = next_lambda;
        rho = next_rho;
    }
    Ok(MalcevWord {
        level: n,
        lambda: Term::new(n + 2, lambda)?,
        rho: Term::new(n + 2, rho)?,
    })
}

/// `a μ_n b` iff `λ_n(a, b, z⃗) = ρ_n(a, b, z⃗)` for all `z⃗ ∈ Sⁿ`.
///
/// The values `(λ_{k+1}, ρ_{k+1})` depend only on `(λ_k, ρ_k)` and `z_k`, so
/// the quantifier is resolved level by level over value pairs. The result is
/// reflexive, symmetric and closed under inversion but need not be closed
/// under products: on `IS(2)`, `μ_2` is not.
pub fn malcev_relation(s: &InverseSemigroup, n: usize, limits: &Limits) -> Result<Tolerance> {
    malcev_words(n)?;
    let m = s.order();
    limits.check_budget("Mal'cev relation", (n as u128) * (m as u128).pow(3))?;
    // good[l * m + r]: λ = l, ρ = r at the current level extends to equality
    let mut good: Vec<bool> = (0..m * m).map(|i| i / m == i % m).collect();
    for _ in 0..n {
        good = (0..m * m)
            .map(|i| {
                let (l, r) = (i / m, i % m);
                s.elements()
                    .all(|z| good[s.mul(s.mul(l, z), r) * m + s.mul(s.mul(r, z), l)])
            })
            .collect();
    }
    Ok(Tolerance::from_fn(m, |a, b| good[a * m + b]))
}

/// [`malcev_relation`], failing with the first axiom violation if it is not
/// a tolerance.
pub fn malcev_tolerance(s: &InverseSemigroup, n: usize, limits: &Limits) -> Result<Tolerance> {
    let mu = malcev_relation(s, n, limits)?;
    if let Some(v) = mu.violation(s) {
        return Err(Error::TheoremMismatch(format!(
            "μ_{n} is not a tolerance: {v:?}"
        )));
    }
    Ok(mu)
}

pub fn is_malcev_nilpotent(s: &InverseSemigroup, n: usize, limits: &Limits) -> Result<bool> {
    Ok(malcev_relation(s, n, limits)?.is_universal())
}

/// Least `n ≤ max` with `μ_n = 1_S`.
pub fn malcev_class(s: &InverseSemigroup, max: usize, limits: &Limits) -> Result<Option<usize>> {
    for n in 0..=max {
        if is_malcev_nilpotent(s, n, limits)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Comparison of `ζ_n(S)` with `H ∩ μ_n`.
#[derive(Debug, Clone)]
pub struct ConjectureVerdict {
    pub n: usize,
    pub holds: bool,
    pub lhs: Congruence,
    pub rhs: Tolerance,
    /// Least pair in exactly one of the two relations.
    pub witness: Option<(Element, Element)>,
}

pub fn conjecture_check(
    s: &InverseSemigroup,
    n: usize,
    limits: &Limits,
) -> Result<ConjectureVerdict> {
    let rhs = malcev_relation(s, n, limits)?.intersect(&s.h_relation());
    let lhs = upper_central_series(s, limits)?.term(n).clone();
    let witness = rhs.difference_from(lhs.partition());
    Ok(ConjectureVerdict {
        n,
        holds: witness.is_none(),
        lhs,
        rhs,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        brandt, chain, cyclic_group, dihedral_group, quaternion_group, symmetric_group,
    };
    use crate::pbij::symmetric_inverse_monoid;

    fn b2() -> InverseSemigroup {
        brandt(&cyclic_group(1).unwrap(), 2).unwrap()
    }

    /// `μ_n` by evaluating the words on every `z⃗`.
    fn mu_literal(s: &InverseSemigroup, n: usize) -> Tolerance {
        let w = malcev_words(n).unwrap();
        let m = s.order();
        Tolerance::from_fn(m, |a, b| {
            let mut args = vec![0; n + 2];
            args[0] = a;
            args[1] = b;
            (0..m.pow(n as u32)).all(|mut code| {
                for slot in &mut args[2..] {
                    *slot = code % m;
                    code /= m;
                }
                w.lambda.eval(s, &args).unwrap() == w.rho.eval(s, &args).unwrap()
            })
        })
    }

    #[test]
    fn words() {
        let fmt = |t: &Term| format!("{t:?}");
        let w0 = malcev_words(0).unwrap();
        assert_eq!((fmt(&w0.lambda), fmt(&w0.rho)), ("x0".into(), "x1".into()));
        let w1 = malcev_words(1).unwrap();
        assert_eq!(
            (fmt(&w1.lambda), fmt(&w1.rho)),
            ("x0 x2 x1".into(), "x1 x2 x0".into())
        );
        let w2 = malcev_words(2).unwrap();
        assert_eq!(fmt(&w2.lambda), "x0 x2 x1 x3 x1 x2 x0");
        assert_eq!(fmt(&w2.rho), "x1 x2 x0 x3 x0 x2 x1");
        for n in 0..MALCEV_GUARD {
            let (a, b) = (malcev_words(n).unwrap(), malcev_words(n + 1).unwrap());
            assert_eq!(b.lambda.len(), 2 * a.lambda.len() + 1);
            assert_eq!(b.rho.len(), (1 << (n + 2)) - 1);
        }
        assert!(matches!(
            malcev_words(5),
            Err(Error::LevelTooLarge { level: 5, max: 4 })
        ));
    }

    #[test]
    fn tolerance_matches_literal_evaluation() {
        let lim = Limits::default();
        for s in [
            b2(),
            symmetric_group(3).unwrap(),
            chain(3).unwrap(),
            symmetric_inverse_monoid(2).unwrap().semigroup,
        ] {
            for n in 0..=2 {
                assert_eq!(
                    malcev_relation(&s, n, &lim).unwrap(),
                    mu_literal(&s, n),
                    "n = {n}"
                );
            }
        }
    }

    #[test]
    fn second_relation_on_is2_is_not_compatible() {
        let lim = Limits::default();
        let is2 = symmetric_inverse_monoid(2).unwrap();
        let s = &is2.semigroup;
        assert!(malcev_tolerance(s, 1, &lim).is_ok());
        let mu = malcev_relation(s, 2, &lim).unwrap();
        let at =
            |img: [Option<usize>; 2]| is2.embedding.iter().position(|p| p.image() == img).unwrap();
        let e1 = at([None, Some(1)]);
        let (up, down) = (at([Some(1), None]), at([None, Some(0)]));
        assert!(mu.contains(e1, up) && mu.contains(e1, down));
        assert!(!mu.contains(s.mul(e1, e1), s.mul(up, down)));
        assert!(matches!(
            malcev_tolerance(s, 2, &lim),
            Err(Error::TheoremMismatch(_))
        ));
    }

    #[test]
    fn malcev_examples() {
        let lim = Limits::default();
        let s = b2();
        assert!(malcev_tolerance(&s, 0, &lim).unwrap().is_identity());
        assert!(!is_malcev_nilpotent(&s, 1, &lim).unwrap());
        assert!(is_malcev_nilpotent(&s, 2, &lim).unwrap());
        assert_eq!(malcev_class(&s, 4, &lim).unwrap(), Some(2));
        assert!(malcev_tolerance(&cyclic_group(4).unwrap(), 1, &lim)
            .unwrap()
            .is_universal());
        let s3 = symmetric_group(3).unwrap();
        assert!(malcev_tolerance(&s3, 1, &lim).unwrap().is_identity());
        assert_eq!(malcev_class(&s3, 4, &lim).unwrap(), None);
        assert_eq!(
            malcev_class(&dihedral_group(4).unwrap(), 4, &lim).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn series_examples() {
        let lim = Limits::default();
        let c = upper_central_series(&chain(3).unwrap(), &lim).unwrap();
        assert_eq!(c.terms.len(), 1);
        assert!(c.stabilized && c.terms[0].is_identity());
        for g in [dihedral_group(4).unwrap(), quaternion_group().unwrap()] {
            let c = upper_central_series(&g, &lim).unwrap();
            assert_eq!(c.terms.len(), 3);
            assert_eq!(c.terms[1].blocks().len(), 4);
            assert_eq!(c.class(), Some(2));
        }
        let c = upper_central_series(&b2(), &lim).unwrap();
        assert_eq!(c.terms, vec![Congruence::identity(&b2())]);
        assert!(c.term(7).is_identity());
    }

    #[test]
    fn nilpotence_and_solvability() {
        let lim = Limits::default();
        assert_eq!(
            is_nilpotent(&cyclic_group(4).unwrap(), &lim).unwrap(),
            Some(1)
        );
        assert_eq!(is_nilpotent(&b2(), &lim).unwrap(), None);
        assert_eq!(is_nilpotent(&chain(2).unwrap(), &lim).unwrap(), None);
        assert_eq!(
            is_nilpotent(&symmetric_group(3).unwrap(), &lim).unwrap(),
            None
        );
        assert_eq!(
            is_solvable(&symmetric_group(3).unwrap(), &lim).unwrap(),
            Some(2)
        );
        assert_eq!(
            is_solvable(&cyclic_group(4).unwrap(), &lim).unwrap(),
            Some(1)
        );
        assert_eq!(
            is_solvable(&symmetric_inverse_monoid(2).unwrap().semigroup, &lim).unwrap(),
            None
        );
        assert_eq!(
            is_solvable(&cyclic_group(1).unwrap(), &lim).unwrap(),
            Some(0)
        );
    }

    #[test]
    fn kmm_on_semilattice_and_group() {
        let lim = Limits::default();
        assert_eq!(
            kmm_kernel_series(&chain(3).unwrap(), &lim).unwrap().class,
            Some(0)
        );
        assert_eq!(
            kmm_kernel_series(&cyclic_group(4).unwrap(), &lim)
                .unwrap()
                .class,
            Some(1)
        );
        assert_eq!(kmm_kernel_series(&b2(), &lim).unwrap().class, None);
    }

    #[test]
    fn conjecture_small_levels() {
        let lim = Limits::default();
        for s in [
            b2(),
            symmetric_group(3).unwrap(),
            dihedral_group(4).unwrap(),
            chain(2).unwrap(),
        ] {
            for n in 0..=2 {
                let v = conjecture_check(&s, n, &lim).unwrap();
                assert!(v.holds, "n = {n}: {:?}", v.witness);
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let lim = Limits::default().with_budget(10);
        assert!(matches!(
            malcev_relation(&b2(), 2, &lim),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
