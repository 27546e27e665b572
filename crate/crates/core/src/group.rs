//! Classical group theory on groups given as one-idempotent inverse
//! semigroups. These routines use commutators and element-wise centers only,
//! so they serve as an independent check on the congruence-based deciders.

use crate::semigroup::{Element, InverseSemigroup};
use crate::subset::Subset;

fn identity(g: &InverseSemigroup) -> Element {
    assert!(g.is_group(), "expected a group");
    g.idempotents()[0]
}

/// `x⁻¹ y⁻¹ x y`.
pub fn commutator(g: &InverseSemigroup, x: Element, y: Element) -> Element {
    g.product([g.inv(x), g.inv(y), x, y]).expect("four factors")
}

pub fn subgroup_generated(g: &InverseSemigroup, gens: &Subset) -> Subset {
    let mut sub = Subset::from_elements(g.order(), [identity(g)]);
    let mut frontier: Vec<Element> = sub.to_vec();
    frontier.extend(gens.iter());
    for x in gens.iter() {
        sub.insert(x);
    }
    while let Some(x) = frontier.pop() {
        for y in sub.to_vec() {
            for z in [g.mul(x, y), g.mul(y, x), g.inv(x)] {
                if sub.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    sub
}

pub fn derived_subgroup(g: &InverseSemigroup, h: &Subset) -> Subset {
    let comms = Subset::from_elements(
        g.order(),
        h.iter()
            .flat_map(|x| h.iter().map(move |y| commutator(g, x, y))),
    );
    subgroup_generated(g, &comms)
}

/// Number of steps for the derived series to reach the trivial subgroup,
/// or `None` if it stalls above it.
pub fn derived_length(g: &InverseSemigroup) -> Option<usize> {
    let mut current = Subset::full(g.order());
    let mut steps = 0;
    while current.len() > 1 {
        let next = derived_subgroup(g, &current);
        if next == current {
            return None;
        }
        current = next;
        steps += 1;
    }
    Some(steps)
}

/// Nilpotency class via the upper central series
/// `Z_{i+1} = {x : [x, y] ∈ Z_i for all y}`, or `None` if it stalls.
pub fn nilpotency_class(g: &InverseSemigroup) -> Option<usize> {
    let mut current = Subset::from_elements(g.order(), [identity(g)]);
    let mut steps = 0;
    while current.len() < g.order() {
        let next = Subset::from_elements(
            g.order(),
            g.elements()
                .filter(|&x| g.elements().all(|y| current.contains(commutator(g, x, y)))),
        );
        if next == current {
            return None;
        }
        current = next;
        steps += 1;
    }
    Some(steps)
}
