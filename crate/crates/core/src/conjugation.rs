//! Conjugation by an element relative to a normal inverse subsemigroup `N`:
//! the total maps `ψ_g : N → N`, the partial automorphisms
//! `φ_g : g⁻¹Ng → gNg⁻¹`, their kernels `ζ_N`, and the sets `Z_S(N)`.
//!
//! The transformation monoid of `N` and the partial automorphism monoid are
//! never built; kernels are computed by comparing maps pointwise.

use std::collections::HashSet;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::Partition;
use crate::semigroup::{Element, InverseSemigroup};
use crate::subset::Subset;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalViolation {
    MissingIdempotent(Element),
    Product(Element, Element),
    Inverse(Element),
    /// `g⁻¹ a g ∉ N`.
    Conjugate {
        g: Element,
        a: Element,
    },
}

pub fn normal_violation(s: &InverseSemigroup, n: &Subset) -> Option<NormalViolation> {
    if let Some(&e) = s.idempotents().iter().find(|&&e| !n.contains(e)) {
        return Some(NormalViolation::MissingIdempotent(e));
    }
    for a in n.iter() {
        if !n.contains(s.inv(a)) {
            return Some(NormalViolation::Inverse(a));
        }
        if let Some(b) = n.iter().find(|&b| !n.contains(s.mul(a, b))) {
            return Some(NormalViolation::Product(a, b));
        }
    }
    for g in s.elements() {
        let gi = s.inv(g);
        if let Some(a) = n.iter().find(|&a| !n.contains(s.conjugate(gi, a))) {
            return Some(NormalViolation::Conjugate { g, a });
        }
    }
    None
}

pub fn is_normal(s: &InverseSemigroup, n: &Subset) -> bool {
    normal_violation(s, n).is_none()
}

/// A full, self-conjugate inverse subsemigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalSubsemigroup(Subset);

impl NormalSubsemigroup {
    pub fn new(s: &InverseSemigroup, members: Subset) -> Result<Self> {
        match normal_violation(s, &members) {
            Some(v) => Err(Error::NotNormal(format!("{v:?}"))),
            None => Ok(NormalSubsemigroup(members)),
        }
    }

    /// `E(S)`, the least normal inverse subsemigroup.
    pub fn idempotents(s: &InverseSemigroup) -> Self {
        NormalSubsemigroup(s.idempotent_set().clone())
    }

    pub fn whole(s: &InverseSemigroup) -> Self {
        NormalSubsemigroup(Subset::full(s.order()))
    }

    pub fn members(&self) -> &Subset {
        &self.0
    }

    pub fn contains(&self, a: Element) -> bool {
        self.0.contains(a)
    }
}

/// The least normal inverse subsemigroup containing `x`.
pub fn normal_closure(s: &InverseSemigroup, x: &Subset) -> NormalSubsemigroup {
    let mut members = x.union(s.idempotent_set());
    let mut frontier: Vec<Element> = members.to_vec();
    while let Some(a) = frontier.pop() {
        let mut fresh = vec![s.inv(a)];
        for g in s.elements() {
            fresh.push(s.conjugate(g, a));
        }
        for b in members.to_vec() {
            fresh.push(s.mul(a, b));
            fresh.push(s.mul(b, a));
        }
        for y in fresh {
            if members.insert(y) {
                frontier.push(y);
            }
        }
    }
    NormalSubsemigroup(members)
}

/// All normal inverse subsemigroups, smallest first, ties by membership.
pub fn enumerate_normal_subsemigroups(
    s: &InverseSemigroup,
    limits: &Limits,
) -> Result<Vec<NormalSubsemigroup>> {
    limits.check_exhaustive(s.order())?;
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut principal: Vec<Subset> = Vec::new();
    for a in s.elements() {
        let c = normal_closure(s, &Subset::from_elements(s.order(), [a])).0;
        if seen.insert(c.clone()) {
            principal.push(c);
        }
    }
    seen.insert(s.idempotent_set().clone());
    let mut all: Vec<Subset> = seen.iter().cloned().collect();
    let mut queue = all.clone();
    while let Some(c) = queue.pop() {
        for p in &principal {
            let j = normal_closure(s, &c.union(p)).0;
            if seen.insert(j.clone()) {
                all.push(j.clone());
                queue.push(j);
            }
        }
    }
    all.sort_by_key(|a| (a.len(), a.to_vec()));
    Ok(all.into_iter().map(NormalSubsemigroup).collect())
}

/// A partial map on the elements of `S`; `None` marks points outside the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    images: Vec<Option<Element>>,
}

impl PartialMap {
    pub fn apply(&self, a: Element) -> Option<Element> {
        self.images[a]
    }

    pub fn images(&self) -> &[Option<Element>] {
        &self.images
    }

    pub fn domain(&self) -> Subset {
        Subset::from_elements(
            self.images.len(),
            (0..self.images.len()).filter(|&a| self.images[a].is_some()),
        )
    }

    pub fn image(&self) -> Subset {
        Subset::from_elements(self.images.len(), self.images.iter().flatten().copied())
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &PartialMap) -> PartialMap {
        PartialMap {
            images: inner
                .images
                .iter()
                .map(|x| x.and_then(|y| self.images[y]))
                .collect(),
        }
    }
}

/// `ψ_g`, defined on all of `N`.
pub type TotalConjugationMap = PartialMap;
/// `φ_g`; equality is equality in the symmetric inverse monoid on `S`.
pub type PartialAutomorphism = PartialMap;

/// `ψ_g(a) = g a g⁻¹` for `a ∈ N`.
pub fn psi(s: &InverseSemigroup, n: &NormalSubsemigroup, g: Element) -> TotalConjugationMap {
    let images = s
        .elements()
        .map(|a| n.contains(a).then(|| s.conjugate(g, a)))
        .collect();
    PartialMap { images }
}

/// `φ_g : g⁻¹Ng → gNg⁻¹`, `x ↦ g x g⁻¹`.
///
/// Panics if the result is not a partial automorphism of `N`.
pub fn phi(s: &InverseSemigroup, n: &NormalSubsemigroup, g: Element) -> PartialAutomorphism {
    let domain = conjugate_set(s, s.inv(g), n.members());
    let images = s
        .elements()
        .map(|x| domain.contains(x).then(|| s.conjugate(g, x)))
        .collect();
    let map = PartialMap { images };
    assert!(
        is_partial_automorphism(s, &map),
        "φ_{g} is not a partial automorphism"
    );
    map
}

/// `g X g⁻¹`.
pub fn conjugate_set(s: &InverseSemigroup, g: Element, x: &Subset) -> Subset {
    Subset::from_elements(s.order(), x.iter().map(|a| s.conjugate(g, a)))
}

/// Domain and image are inverse subsemigroups and the map is an isomorphism between them.
pub fn is_partial_automorphism(s: &InverseSemigroup, map: &PartialMap) -> bool {
    let (domain, image) = (map.domain(), map.image());
    if domain.len() != image.len()
        || !s.is_inverse_subsemigroup(&domain)
        || !s.is_inverse_subsemigroup(&image)
    {
        return false;
    }
    let f = |a: Element| map.apply(a).expect("in domain");
    let ok = domain.iter().all(|a| {
        f(s.inv(a)) == s.inv(f(a)) && domain.iter().all(|b| f(s.mul(a, b)) == s.mul(f(a), f(b)))
    });
    ok
}

/// `ker Ψ_N`: `g ~ h` iff `ψ_g = ψ_h` on `N`.
pub fn ker_psi(s: &InverseSemigroup, n: &NormalSubsemigroup) -> Congruence {
    let p = Partition::from_key(s.order(), |g| psi(s, n, g));
    Congruence::new(s, p).expect("kernel of a homomorphism is a congruence")
}

/// `ker Φ_N`: `g ~ h` iff `φ_g` and `φ_h` have the same domain and agree on it.
pub fn ker_phi(s: &InverseSemigroup, n: &NormalSubsemigroup) -> Congruence {
    let p = Partition::from_key(s.order(), |g| phi(s, n, g));
    Congruence::new(s, p).expect("kernel of a homomorphism is a congruence")
}

/// `Z_S(N) = {g : g g⁻¹ a g = g a g⁻¹ g for all a ∈ N}`.
pub fn z_of(s: &InverseSemigroup, n: &NormalSubsemigroup) -> Subset {
    let central = |g: Element| {
        let (gi, gg) = (s.inv(g), s.r_idempotent(g));
        n.members()
            .iter()
            .all(|a| s.mul(s.mul(gg, a), g) == s.product([g, a, gi, g]).expect("four factors"))
    };
    Subset::from_elements(s.order(), s.elements().filter(|&g| central(g)))
}

/// `Z(S) = {a : a x a⁻¹ a = a a⁻¹ x a for all x}`.
pub fn metacenter(s: &InverseSemigroup) -> Subset {
    z_of(s, &NormalSubsemigroup::whole(s))
}

/// The maximum idempotent-separating congruence `ζ_{E(S)}`.
pub fn max_idempotent_separating(s: &InverseSemigroup) -> Congruence {
    ker_psi(s, &NormalSubsemigroup::idempotents(s))
}

/// `ξ = {(a, b) : a x b = b x a for all x}`.
pub fn xi_relation(s: &InverseSemigroup) -> Tolerance {
    relative_xi(s, &Subset::full(s.order()))
}

/// `{(a, b) : a x b = b x a for all x ∈ X}`.
pub fn relative_xi(s: &InverseSemigroup, x: &Subset) -> Tolerance {
    Tolerance::from_fn(s.order(), |a, b| {
        x.iter()
            .all(|y| s.mul(s.mul(a, y), b) == s.mul(s.mul(b, y), a))
    })
}

/// The least pair in `ζ_N` that lies outside `H ∩ {(g, h) : g a h = h a g, a ∈ N}`.
/// For `N = S` there is none; for `N = E(S)` in a noncommutative group every
/// noncommuting pair qualifies.
pub fn kernel_xi_gap(s: &InverseSemigroup, n: &NormalSubsemigroup) -> Option<(Element, Element)> {
    let zeta = ker_psi(s, n);
    let h = s.h_relation();
    let xi_n = relative_xi(s, n.members());
    zeta.pairs()
        .into_iter()
        .find(|&(g, k)| !(h.related(g, k) && xi_n.contains(g, k)))
}
