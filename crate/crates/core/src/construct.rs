//! Standard constructions used throughout the test corpus.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pbij::{close_partial_bijections, PartialBijection, MAX_SYMMETRIC_DEGREE};
use crate::semigroup::{CayleyTable, Element, InverseSemigroup};

pub fn cyclic_group(n: usize) -> Result<InverseSemigroup> {
    InverseSemigroup::from_cayley_table(CayleyTable::from_fn(n, |a, b| (a + b) % n)?)
}

/// Dihedral group of order `2n`; `r^k s^e` is element `k + n e`.
pub fn dihedral_group(n: usize) -> Result<InverseSemigroup> {
    let table = CayleyTable::from_fn(2 * n, |x, y| {
        let (a, e) = (x % n, x / n);
        let (b, f) = (y % n, y / n);
        let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
        k + n * ((e + f) % 2)
    })?;
    InverseSemigroup::from_cayley_table(table)
}

/// Quaternion group; element `4 s + u` is `(-1)^s` times unit `u` of `1, i, j, k`.
pub fn quaternion_group() -> Result<InverseSemigroup> {
    // (sign, unit) of the product of two units
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table = CayleyTable::from_fn(8, |x, y| {
        let (sign, unit) = UNITS[x % 4][y % 4];
        4 * ((x / 4 + y / 4 + sign) % 2) + unit
    })?;
    InverseSemigroup::from_cayley_table(table)
}

/// The symmetric group on `n` points, generated by a transposition and an `n`-cycle.
pub fn symmetric_group(n: usize) -> Result<InverseSemigroup> {
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: MAX_SYMMETRIC_DEGREE,
        });
    }
    let mut gens = vec![PartialBijection::identity(n)];
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(PartialBijection::permutation(&swap)?);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(PartialBijection::permutation(&cycle)?);
    }
    Ok(close_partial_bijections(&gens)?.semigroup)
}

/// The chain semilattice `0 > 1 > ... > n-1`; the product is the lower element.
pub fn chain(n: usize) -> Result<InverseSemigroup> {
    InverseSemigroup::from_cayley_table(CayleyTable::from_fn(n, |a, b| a.max(b))?)
}

/// Index of `(i, g, j)` in [`brandt`]`(G, n)`; the zero is `n * n * |G|`.
pub fn brandt_element(n: usize, group_order: usize, i: usize, g: Element, j: usize) -> Element {
    i * group_order * n + g * n + j
}

/// The Brandt semigroup `B(G, n)` on `[n] × G × [n] ∪ {0}`.
pub fn brandt(group: &InverseSemigroup, n: usize) -> Result<InverseSemigroup> {
    if !group.is_group() {
        return Err(Error::NotAGroup {
            idempotents: group.idempotents().len(),
        });
    }
    let m = group.order();
    let zero = n * n * m;
    let decode = |x: Element| (x / (m * n), (x / n) % m, x % n);
    let table = CayleyTable::from_fn(zero + 1, |x, y| {
        if x == zero || y == zero {
            return zero;
        }
        let (i, g, j) = decode(x);
        let (k, h, l) = decode(y);
        if j == k {
            brandt_element(n, m, i, group.mul(g, h), l)
        } else {
            zero
        }
    })?;
    InverseSemigroup::from_cayley_table(table)
}

/// A structure homomorphism `G_from -> G_to` between components of a strong
/// semilattice of groups; `from` must lie above `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub from: Element,
    pub to: Element,
    pub map: Vec<Element>,
}

/// Builds the Clifford semigroup `⋃ G_α` with product
/// `(α, g)(β, h) = (αβ, φ_{α,αβ}(g) φ_{β,αβ}(h))`.
///
/// Links may be given for any comparable pairs (covering pairs suffice);
/// every other linking map is obtained by composition, and all composites
/// between the same two components must agree. Component `α` occupies a
/// contiguous block of indices, in lattice order.
pub fn strong_semilattice_of_groups(
    lattice: &InverseSemigroup,
    groups: &[InverseSemigroup],
    links: &[Link],
) -> Result<InverseSemigroup> {
    if let Some(x) = lattice.elements().find(|&x| !lattice.is_idempotent(x)) {
        return Err(Error::NotASemilattice(x));
    }
    let k = lattice.order();
    if groups.len() != k {
        return Err(Error::ComponentCountMismatch {
            expected: k,
            found: groups.len(),
        });
    }
    if let Some(g) = groups.iter().find(|g| !g.is_group()) {
        return Err(Error::NotAGroup {
            idempotents: g.idempotents().len(),
        });
    }
    for link in links {
        let (from, to) = (link.from, link.to);
        if from >= k || to >= k || from == to || lattice.mul(from, to) != to {
            return Err(Error::LinkAgainstOrder { from, to });
        }
        let (src, dst) = (&groups[from], &groups[to]);
        let valid = link.map.len() == src.order()
            && link.map.iter().all(|&y| y < dst.order())
            && src.elements().all(|a| {
                src.elements()
                    .all(|b| link.map[src.mul(a, b)] == dst.mul(link.map[a], link.map[b]))
            });
        if !valid {
            return Err(Error::LinkNotHomomorphism { from, to });
        }
    }

    let mut reach: Vec<Option<HashMap<Element, Vec<Element>>>> = vec![None; k];
    fn reachable(
        alpha: Element,
        groups: &[InverseSemigroup],
        links: &[Link],
        memo: &mut Vec<Option<HashMap<Element, Vec<Element>>>>,
    ) -> Result<()> {
        if memo[alpha].is_some() {
            return Ok(());
        }
        let mut maps = HashMap::new();
        maps.insert(alpha, groups[alpha].elements().collect::<Vec<_>>());
        for link in links.iter().filter(|l| l.from == alpha) {
            reachable(link.to, groups, links, memo)?;
            let below = memo[link.to].as_ref().expect("computed above");
            for (&gamma, onward) in below {
                let composite: Vec<Element> = link.map.iter().map(|&x| onward[x]).collect();
                match maps.get(&gamma) {
                    Some(existing) if *existing != composite => {
                        return Err(Error::LinksNotFunctorial {
                            from: alpha,
                            to: gamma,
                        });
                    }
                    Some(_) => {}
                    None => {
                        maps.insert(gamma, composite);
                    }
                }
            }
        }
        memo[alpha] = Some(maps);
        Ok(())
    }
    for alpha in 0..k {
        reachable(alpha, groups, links, &mut reach)?;
    }
    let maps: Vec<HashMap<Element, Vec<Element>>> =
        reach.into_iter().map(|m| m.expect("all visited")).collect();
    for alpha in 0..k {
        for beta in 0..k {
            if lattice.mul(alpha, beta) == beta && !maps[alpha].contains_key(&beta) {
                return Err(Error::MissingLink {
                    from: alpha,
                    to: beta,
                });
            }
        }
    }

    let mut offset = Vec::with_capacity(k);
    let mut component = Vec::new();
    for (alpha, g) in groups.iter().enumerate() {
        offset.push(component.len());
        component.extend(g.elements().map(|x| (alpha, x)));
    }
    let table = CayleyTable::from_fn(component.len(), |x, y| {
        let (alpha, g) = component[x];
        let (beta, h) = component[y];
        let meet = lattice.mul(alpha, beta);
        let product = groups[meet].mul(maps[alpha][&meet][g], maps[beta][&meet][h]);
        offset[meet] + product
    })?;
    InverseSemigroup::from_cayley_table(table)
}

/// Componentwise product; `(a, b)` is element `a |T| + b`.
pub fn direct_product(s: &InverseSemigroup, t: &InverseSemigroup) -> Result<InverseSemigroup> {
    let m = t.order();
    let table = CayleyTable::from_fn(s.order() * m, |x, y| {
        s.mul(x / m, y / m) * m + t.mul(x % m, y % m)
    })?;
    InverseSemigroup::from_cayley_table(table)
}

/// A homomorphism from `group` onto the trivial group.
pub fn trivial_map(group: &InverseSemigroup) -> Vec<Element> {
    vec![0; group.order()]
}
