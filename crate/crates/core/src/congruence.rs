//! Congruences, kernels and traces, and the correspondence with
//! congruence pairs `(N, ε)`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize, Serializer};

use crate::conjugation::{normal_violation, NormalViolation};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::{Partition, UnionFind};
use crate::semigroup::{CayleyTable, Element, InverseSemigroup};
use crate::subset::Subset;

/// A partition of the semigroup that is stable under translations and inversion.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence(Partition);

/// Why a partition fails to be a congruence. `a` and `b` are related, the
/// images under the named operation are not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceViolation {
    Left { a: Element, b: Element, x: Element },
    Right { a: Element, b: Element, x: Element },
    Inversion { a: Element, b: Element },
}

fn translation_violation(s: &InverseSemigroup, p: &Partition) -> Option<CongruenceViolation> {
    for b in s.elements() {
        let a = p.label(b);
        if a == b {
            continue;
        }
        for x in s.elements() {
            if !p.related(s.mul(x, a), s.mul(x, b)) {
                return Some(CongruenceViolation::Left { a, b, x });
            }
            if !p.related(s.mul(a, x), s.mul(b, x)) {
                return Some(CongruenceViolation::Right { a, b, x });
            }
        }
    }
    None
}

fn inversion_violation(s: &InverseSemigroup, p: &Partition) -> Option<CongruenceViolation> {
    s.elements()
        .map(|b| (p.label(b), b))
        .find(|&(a, b)| !p.related(s.inv(a), s.inv(b)))
        .map(|(a, b)| CongruenceViolation::Inversion { a, b })
}

/// Checks translation and inversion invariance.
///
/// Panics if a multiplication-invariant partition is not inversion-invariant:
/// homomorphisms of inverse semigroups preserve inverses, so that would mean
/// the semigroup itself is broken.
pub fn congruence_violation(s: &InverseSemigroup, p: &Partition) -> Option<CongruenceViolation> {
    assert_eq!(
        p.len(),
        s.order(),
        "partition carrier does not match the semigroup"
    );
    let translation = translation_violation(s, p);
    let inversion = inversion_violation(s, p);
    assert!(
        translation.is_some() || inversion.is_none(),
        "multiplication-invariant equivalence is not inversion-invariant: {inversion:?}"
    );
    translation.or(inversion)
}

pub fn is_congruence(s: &InverseSemigroup, p: &Partition) -> bool {
    congruence_violation(s, p).is_none()
}

impl Congruence {
    pub fn new(s: &InverseSemigroup, p: Partition) -> Result<Self> {
        if p.len() != s.order() {
            return Err(Error::CarrierMismatch {
                expected: s.order(),
                found: p.len(),
            });
        }
        match congruence_violation(s, &p) {
            Some(v) => Err(Error::NotACongruence(format!("{v:?}"))),
            None => Ok(Congruence(p)),
        }
    }

    pub fn identity(s: &InverseSemigroup) -> Self {
        Congruence(Partition::discrete(s.order()))
    }

    pub fn universal(s: &InverseSemigroup) -> Self {
        Congruence(Partition::universal(s.order()))
    }

    pub fn from_blocks(s: &InverseSemigroup, blocks: &[Vec<Element>]) -> Result<Self> {
        Congruence::new(s, Partition::from_blocks(s.order(), blocks)?)
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }

    #[inline]
    pub fn related(&self, a: Element, b: Element) -> bool {
        self.0.related(a, b)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_discrete()
    }

    pub fn is_universal(&self) -> bool {
        self.0.is_universal()
    }

    pub fn refines(&self, other: &Congruence) -> bool {
        self.0.refines(&other.0)
    }

    /// The join of congruences as equivalences is again a congruence.
    pub fn join(&self, other: &Congruence) -> Congruence {
        Congruence(self.0.join(&other.0))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        Congruence(self.0.meet(&other.0))
    }

    pub fn blocks(&self) -> Vec<Vec<Element>> {
        self.0.blocks()
    }

    /// All related pairs `(a, b)`, including `a = b`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(Element, Element)> {
        let n = self.0.len();
        (0..n)
            .flat_map(|a| {
                (0..n)
                    .filter(move |&b| self.related(a, b))
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.0.blocks().iter().map(|b| b.len() * b.len()).sum()
    }
}

impl std::fmt::Debug for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Wire format `{"blocks": [[i, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksFile {
    pub blocks: Vec<Vec<Element>>,
}

impl Serialize for Congruence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BlocksFile {
            blocks: self.blocks(),
        }
        .serialize(serializer)
    }
}

/// The least congruence containing `pairs`.
pub fn congruence_generated(s: &InverseSemigroup, pairs: &[(Element, Element)]) -> Congruence {
    let mut uf = UnionFind::new(s.order());
    let mut pending: VecDeque<(Element, Element)> = VecDeque::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            pending.push_back((a, b));
        }
    }
    while let Some((a, b)) = pending.pop_front() {
        let (ai, bi) = (s.inv(a), s.inv(b));
        if uf.union(ai, bi) {
            pending.push_back((ai, bi));
        }
        for x in s.elements() {
            for (c, d) in [(s.mul(x, a), s.mul(x, b)), (s.mul(a, x), s.mul(b, x))] {
                if uf.union(c, d) {
                    pending.push_back((c, d));
                }
            }
        }
    }
    Congruence(uf.into_partition())
}

/// Union of the classes that contain idempotents.
pub fn kernel(s: &InverseSemigroup, alpha: &Congruence) -> Subset {
    let mut marked = Subset::empty(s.order());
    for &e in s.idempotents() {
        marked.insert(alpha.0.label(e));
    }
    Subset::from_elements(
        s.order(),
        s.elements().filter(|&x| marked.contains(alpha.0.label(x))),
    )
}

/// Restriction to `E(S)`, as a partition of positions in `s.idempotents()`.
pub fn trace(s: &InverseSemigroup, alpha: &Congruence) -> Partition {
    let idem = s.idempotents();
    Partition::from_key(idem.len(), |i| alpha.0.label(idem[i]))
}

/// A normal inverse subsemigroup together with a congruence on `E(S)`
/// indexed by position in `s.idempotents()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CongruencePair {
    pub kernel: Subset,
    pub trace: Partition,
}

impl CongruencePair {
    pub fn of(s: &InverseSemigroup, alpha: &Congruence) -> Self {
        CongruencePair {
            kernel: kernel(s, alpha),
            trace: trace(s, alpha),
        }
    }

    /// `(N, 0_{E(S)})`.
    pub fn idempotent_separating(s: &InverseSemigroup, kernel: Subset) -> Self {
        CongruencePair {
            kernel,
            trace: Partition::discrete(s.idempotents().len()),
        }
    }

    pub fn to_file(&self, s: &InverseSemigroup) -> PairFile {
        let idem = s.idempotents();
        PairFile {
            kernel: self.kernel.to_vec(),
            trace_blocks: self
                .trace
                .blocks()
                .into_iter()
                .map(|b| b.into_iter().map(|i| idem[i]).collect())
                .collect(),
        }
    }

    pub fn from_file(s: &InverseSemigroup, file: &PairFile) -> Result<Self> {
        if let Some(&x) = file.kernel.iter().find(|&&x| x >= s.order()) {
            return Err(Error::Parse(format!("kernel element {x} out of range")));
        }
        let position = |e: Element| {
            s.idempotents()
                .binary_search(&e)
                .map_err(|_| Error::Parse(format!("{e} is not an idempotent")))
        };
        let blocks = file
            .trace_blocks
            .iter()
            .map(|b| b.iter().map(|&e| position(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CongruencePair {
            kernel: Subset::from_elements(s.order(), file.kernel.iter().copied()),
            trace: Partition::from_blocks(s.idempotents().len(), &blocks)?,
        })
    }
}

/// Wire format `{"kernel": [...], "trace_blocks": [[e, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    pub kernel: Vec<Element>,
    pub trace_blocks: Vec<Vec<Element>>,
}

/// The first failing clause of the congruence-pair conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairViolation {
    CarrierMismatch,
    NotNormal(NormalViolation),
    /// `e ε f` but not `g⁻¹eg ε g⁻¹fg`.
    TraceNotNormal {
        e: Element,
        f: Element,
        g: Element,
    },
    /// `ae ∈ N` and `e ε a⁻¹a`, yet `a ∉ N`.
    Cp1 {
        a: Element,
        e: Element,
    },
    /// `a ∈ N` but `a⁻¹ea` and `a⁻¹ae` are not ε-related.
    Cp2 {
        a: Element,
        e: Element,
    },
}

/// Checks normality of `N`, normality of `ε` under conjugation by all of
/// `S`, (CP1) and (CP2).
pub fn pair_violation(s: &InverseSemigroup, n: &Subset, eps: &Partition) -> Option<PairViolation> {
    let idem = s.idempotents();
    if n.order() != s.order() || eps.len() != idem.len() {
        return Some(PairViolation::CarrierMismatch);
    }
    if let Some(v) = normal_violation(s, n) {
        return Some(PairViolation::NotNormal(v));
    }
    let pos = |e: Element| idem.binary_search(&e).expect("idempotent");
    let eps_related = |e: Element, f: Element| eps.related(pos(e), pos(f));
    for (i, &e) in idem.iter().enumerate() {
        let f = idem[eps.label(i)];
        for g in s.elements() {
            let gi = s.inv(g);
            if !eps_related(s.mul(s.mul(gi, e), g), s.mul(s.mul(gi, f), g)) {
                return Some(PairViolation::TraceNotNormal { e: f, f: e, g });
            }
        }
    }
    for a in s.elements() {
        let aa = s.l_idempotent(a);
        for &e in idem {
            if n.contains(s.mul(a, e)) && eps_related(e, aa) && !n.contains(a) {
                return Some(PairViolation::Cp1 { a, e });
            }
        }
    }
    for a in n.iter() {
        let ai = s.inv(a);
        for &e in idem {
            let lhs = s.product([ai, e, a]).expect("three factors");
            let rhs = s.product([ai, a, e]).expect("three factors");
            if !eps_related(lhs, rhs) {
                return Some(PairViolation::Cp2 { a, e });
            }
        }
    }
    None
}

pub fn is_congruence_pair(s: &InverseSemigroup, n: &Subset, eps: &Partition) -> bool {
    pair_violation(s, n, eps).is_none()
}

/// `a α b` iff `ab⁻¹ ∈ N` and `a⁻¹a ε b⁻¹b`.
pub fn congruence_from_pair(s: &InverseSemigroup, pair: &CongruencePair) -> Result<Congruence> {
    if let Some(v) = pair_violation(s, &pair.kernel, &pair.trace) {
        return Err(Error::InvalidPair(format!("{v:?}")));
    }
    let idem = s.idempotents();
    let pos = |e: Element| idem.binary_search(&e).expect("idempotent");
    let related = |a: Element, b: Element| {
        pair.kernel.contains(s.mul(a, s.inv(b)))
            && pair
                .trace
                .related(pos(s.l_idempotent(a)), pos(s.l_idempotent(b)))
    };
    let p = Partition::from_equivalence(s.order(), related).ok_or_else(|| {
        Error::CharacterizationMismatch(
            "relation of a congruence pair is not an equivalence".into(),
        )
    })?;
    Congruence::new(s, p)
        .map_err(|e| Error::CharacterizationMismatch(format!("relation of a congruence pair: {e}")))
}

/// Every congruence, as joins of principal congruences, sorted from the
/// finest (`0_S`) to the coarsest (`1_S`): more blocks first, then by labels.
pub fn enumerate_congruences(s: &InverseSemigroup, limits: &Limits) -> Result<Vec<Congruence>> {
    limits.check_exhaustive(s.order())?;
    let mut principal: Vec<Congruence> = Vec::new();
    let mut seen: HashSet<Congruence> = HashSet::new();
    for a in s.elements() {
        for b in a + 1..s.order() {
            let c = congruence_generated(s, &[(a, b)]);
            if seen.insert(c.clone()) {
                principal.push(c);
            }
        }
    }
    let bottom = Congruence::identity(s);
    seen.insert(bottom.clone());
    let mut all: Vec<Congruence> = seen.iter().cloned().collect();
    let mut queue: VecDeque<Congruence> = all.iter().cloned().collect();
    while let Some(c) = queue.pop_front() {
        for p in &principal {
            let j = c.join(p);
            if seen.insert(j.clone()) {
                all.push(j.clone());
                queue.push_back(j);
            }
        }
    }
    all.sort_by(|x, y| x.0.sort_key().cmp(&y.0.sort_key()));
    Ok(all)
}

/// `S/α` with its projection `S → S/α`. Classes are numbered in order of
/// their least element.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub semigroup: InverseSemigroup,
    pub projection: Vec<Element>,
}

impl Quotient {
    /// Pulls a relation on the quotient back to `S`.
    pub fn preimage(&self, q: &Congruence) -> Congruence {
        Congruence(Partition::from_key(self.projection.len(), |x| {
            q.0.label(self.projection[x])
        }))
    }

    /// `β/α` for a congruence `β ⊇ α` of `S`.
    pub fn relative(&self, beta: &Congruence) -> Congruence {
        let mut rep = vec![0; self.semigroup.order()];
        for x in (0..self.projection.len()).rev() {
            rep[self.projection[x]] = x;
        }
        Congruence(Partition::from_key(self.semigroup.order(), |c| {
            beta.0.label(rep[c])
        }))
    }
}

/// Panics only if the induced table fails to be an inverse semigroup, which
/// cannot happen for a homomorphic image of an inverse semigroup.
pub fn quotient(s: &InverseSemigroup, alpha: &Congruence) -> Quotient {
    let projection = alpha.0.block_indices();
    let reps: Vec<Element> = alpha.0.blocks().iter().map(|b| b[0]).collect();
    let table = CayleyTable::from_fn(reps.len(), |a, b| projection[s.mul(reps[a], reps[b])])
        .expect("quotient table entries are class indices");
    let semigroup = InverseSemigroup::from_cayley_table(table)
        .expect("homomorphic image of an inverse semigroup is inverse");
    Quotient {
        semigroup,
        projection,
    }
}

/// `tr(α) = 0_{E(S)}`, cross-checked against `α ⊆ H`.
pub fn is_idempotent_separating(s: &InverseSemigroup, alpha: &Congruence) -> bool {
    let by_trace = trace(s, alpha).is_discrete();
    let by_green = alpha.0.refines(&s.h_relation());
    assert_eq!(
        by_trace, by_green,
        "trace criterion and H criterion disagree for {alpha:?}"
    );
    by_trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{brandt, chain, cyclic_group, dihedral_group, symmetric_group};
    use crate::pbij::symmetric_inverse_monoid;

    fn is2() -> InverseSemigroup {
        symmetric_inverse_monoid(2).unwrap().semigroup
    }

    #[test]
    fn trivial_partitions_are_congruences() {
        let s = is2();
        assert!(is_congruence(&s, &Partition::discrete(7)));
        assert!(is_congruence(&s, &Partition::universal(7)));
    }

    #[test]
    fn unit_group_block_is_not_a_congruence() {
        let s = is2();
        let id = s.identity().unwrap();
        let units: Vec<_> = s
            .elements()
            .filter(|&x| s.r_idempotent(x) == id && s.l_idempotent(x) == id)
            .collect();
        let p = Partition::from_key(7, |x| if units.contains(&x) { units[0] } else { x });
        assert!(matches!(
            congruence_violation(&s, &p),
            Some(CongruenceViolation::Left { .. } | CongruenceViolation::Right { .. })
        ));
    }

    #[test]
    fn generated_congruences() {
        let s = chain(2).unwrap();
        assert!(congruence_generated(&s, &[]).is_identity());
        assert!(congruence_generated(&s, &[(1, 1)]).is_identity());
        assert!(congruence_generated(&s, &[(0, 1)]).is_universal());
        let b2 = brandt(&cyclic_group(1).unwrap(), 2).unwrap();
        // collapsing any nonzero element to zero collapses everything nonzero
        let c = congruence_generated(&b2, &[(0, 4)]);
        assert!(c.is_universal());
    }

    #[test]
    fn kernels_and_traces_of_extremes() {
        let s = is2();
        let zero = Congruence::identity(&s);
        let one = Congruence::universal(&s);
        assert_eq!(&kernel(&s, &zero), s.idempotent_set());
        assert_eq!(kernel(&s, &one), Subset::full(7));
        assert!(trace(&s, &zero).is_discrete());
        assert!(trace(&s, &one).is_universal());
    }

    #[test]
    fn group_kernel_is_the_identity_class() {
        let g = dihedral_group(4).unwrap();
        for alpha in enumerate_congruences(&g, &Limits::default()).unwrap() {
            let e = g.identity().unwrap();
            let class = Subset::from_elements(8, g.elements().filter(|&x| alpha.related(x, e)));
            assert_eq!(kernel(&g, &alpha), class);
        }
    }

    #[test]
    fn extreme_pairs() {
        let s = is2();
        let e = s.idempotents().len();
        assert!(is_congruence_pair(
            &s,
            s.idempotent_set(),
            &Partition::discrete(e)
        ));
        assert!(is_congruence_pair(
            &s,
            &Subset::full(7),
            &Partition::universal(e)
        ));
        let bottom = CongruencePair::idempotent_separating(&s, s.idempotent_set().clone());
        assert!(congruence_from_pair(&s, &bottom).unwrap().is_identity());
        let top = CongruencePair {
            kernel: Subset::full(7),
            trace: Partition::universal(e),
        };
        assert!(congruence_from_pair(&s, &top).unwrap().is_universal());
    }

    #[test]
    fn non_closed_kernel_is_rejected() {
        let b2 = brandt(&cyclic_group(1).unwrap(), 2).unwrap();
        let x12 = crate::construct::brandt_element(2, 1, 0, 0, 1);
        let n = b2.idempotent_set().union(&Subset::from_elements(5, [x12]));
        let eps = Partition::discrete(3);
        assert!(matches!(
            pair_violation(&b2, &n, &eps),
            Some(PairViolation::NotNormal(_))
        ));
        let pair = CongruencePair {
            kernel: n,
            trace: eps,
        };
        assert!(matches!(
            congruence_from_pair(&b2, &pair),
            Err(Error::InvalidPair(_))
        ));
    }

    #[test]
    fn group_pairs_give_coset_relations() {
        let g = symmetric_group(3).unwrap();
        let e = g.identity().unwrap();
        // A3: elements of order dividing 3
        let a3 =
            Subset::from_elements(6, g.elements().filter(|&x| g.product([x, x, x]) == Some(e)));
        assert_eq!(a3.len(), 3);
        let alpha = congruence_from_pair(
            &g,
            &CongruencePair {
                kernel: a3.clone(),
                trace: Partition::discrete(1),
            },
        )
        .unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(alpha.related(a, b), a3.contains(g.mul(a, g.inv(b))));
            }
        }
        assert_eq!(alpha.blocks().len(), 2);
    }

    #[test]
    fn enumeration_counts() {
        let limits = Limits::default();
        assert_eq!(
            enumerate_congruences(&cyclic_group(1).unwrap(), &limits)
                .unwrap()
                .len(),
            1
        );
        let c2 = enumerate_congruences(&chain(2).unwrap(), &limits).unwrap();
        assert_eq!(c2.len(), 2);
        assert!(c2[0].is_identity() && c2[1].is_universal());
        assert_eq!(
            enumerate_congruences(&cyclic_group(4).unwrap(), &limits)
                .unwrap()
                .len(),
            3
        );
        // intervals of a 4-chain
        assert_eq!(
            enumerate_congruences(&chain(4).unwrap(), &limits)
                .unwrap()
                .len(),
            8
        );
        let small = Limits {
            exhaustive_cap: 3,
            ..limits
        };
        assert!(matches!(
            enumerate_congruences(&chain(4).unwrap(), &small),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    /// All set partitions of `0..n` by restricted growth strings.
    fn all_partitions(n: usize) -> Vec<Partition> {
        fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Partition>) {
            if prefix.len() == n {
                let p = prefix.clone();
                out.push(Partition::from_key(n, |x| p[x]));
                return;
            }
            let max = prefix.iter().copied().max().map_or(0, |m| m + 1);
            for k in 0..=max {
                prefix.push(k);
                grow(prefix, n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        grow(&mut Vec::new(), n, &mut out);
        out
    }

    #[test]
    fn enumeration_matches_partition_scan() {
        let limits = Limits::default();
        for s in [
            is2(),
            brandt(&cyclic_group(1).unwrap(), 2).unwrap(),
            chain(3).unwrap(),
            symmetric_group(3).unwrap(),
        ] {
            let mut scanned: Vec<Partition> = all_partitions(s.order())
                .into_iter()
                .filter(|p| is_congruence(&s, p))
                .collect();
            scanned.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
            let listed: Vec<Partition> = enumerate_congruences(&s, &limits)
                .unwrap()
                .into_iter()
                .map(Congruence::into_partition)
                .collect();
            assert_eq!(listed, scanned);
        }
    }

    #[test]
    fn quotients() {
        let s = is2();
        let q = quotient(&s, &Congruence::identity(&s));
        assert_eq!(q.semigroup, s);
        let q = quotient(&s, &Congruence::universal(&s));
        assert_eq!(q.semigroup.order(), 1);
        for alpha in enumerate_congruences(&s, &Limits::default()).unwrap() {
            let q = quotient(&s, &alpha);
            for a in s.elements() {
                for b in s.elements() {
                    assert_eq!(
                        q.projection[s.mul(a, b)],
                        q.semigroup.mul(q.projection[a], q.projection[b])
                    );
                }
            }
            if is_idempotent_separating(&s, &alpha) {
                assert_eq!(q.semigroup.idempotents().len(), s.idempotents().len());
            }
            assert_eq!(q.preimage(&q.relative(&alpha)), alpha);
        }
    }

    #[test]
    fn idempotent_separation_extremes() {
        let s = is2();
        assert!(is_idempotent_separating(&s, &Congruence::identity(&s)));
        assert!(!is_idempotent_separating(&s, &Congruence::universal(&s)));
    }

    #[test]
    fn pair_file_round_trip() {
        let s = is2();
        let alpha = enumerate_congruences(&s, &Limits::default()).unwrap()[1].clone();
        let pair = CongruencePair::of(&s, &alpha);
        let json = serde_json::to_string(&pair.to_file(&s)).unwrap();
        let back: PairFile = serde_json::from_str(&json).unwrap();
        assert_eq!(CongruencePair::from_file(&s, &back).unwrap(), pair);
        let blocks = serde_json::to_string(&alpha).unwrap();
        assert!(blocks.starts_with(r#"{"blocks":[["#));
    }
}
