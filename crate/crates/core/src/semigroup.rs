//! Finite inverse semigroups given by Cayley tables.

use crate::error::{Error, Result};
use crate::limits::DEFAULT_ORDER_CAP;
use crate::partition::Partition;
use crate::subset::Subset;

/// Elements are dense indices `0..order`.
pub type Element = usize;

/// A square multiplication table with in-range entries. Associativity is
/// checked later by [`InverseSemigroup::from_cayley_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    product: Vec<Element>,
}

impl CayleyTable {
    pub fn new(rows: Vec<Vec<Element>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        let mut product = Vec::with_capacity(order * order);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::RaggedTable {
                    row: a,
                    len: row.len(),
                    order,
                });
            }
            for (b, value) in row.into_iter().enumerate() {
                if value >= order {
                    return Err(Error::EntryOutOfRange { a, b, value, order });
                }
                product.push(value);
            }
        }
        Ok(CayleyTable { order, product })
    }

    pub fn from_fn<F: FnMut(Element, Element) -> Element>(order: usize, mut f: F) -> Result<Self> {
        let rows = (0..order)
            .map(|a| (0..order).map(|b| f(a, b)).collect())
            .collect();
        CayleyTable::new(rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: Element, b: Element) -> Element {
        self.product[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.product.chunks(self.order).map(<[_]>::to_vec).collect()
    }
}

/// Green's relations of an inverse semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenRelations {
    pub l: Partition,
    pub r: Partition,
    pub h: Partition,
}

/// A validated finite inverse semigroup with its inversion map and idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    table: CayleyTable,
    inv: Vec<Element>,
    idempotent_set: Subset,
    idempotents: Vec<Element>,
}

impl InverseSemigroup {
    pub fn from_cayley_table(table: CayleyTable) -> Result<Self> {
        Self::from_cayley_table_capped(table, DEFAULT_ORDER_CAP)
    }

    /// Validates in the order associativity, regularity, commuting
    /// idempotents, unique inverses. Each failure carries the least witness.
    pub fn from_cayley_table_capped(table: CayleyTable, cap: usize) -> Result<Self> {
        let n = table.order();
        if n > cap {
            return Err(Error::OrderTooLarge { order: n, cap });
        }
        let mul = |a, b| table.get(a, b);

        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }

        for x in 0..n {
            if !(0..n).any(|y| mul(mul(x, y), x) == x) {
                return Err(Error::NotRegular(x));
            }
        }

        let idempotents: Vec<Element> = (0..n).filter(|&e| mul(e, e) == e).collect();
        for (i, &e) in idempotents.iter().enumerate() {
            for &f in &idempotents[i + 1..] {
                if mul(e, f) != mul(f, e) {
                    return Err(Error::IdempotentsDoNotCommute(e, f));
                }
            }
        }

        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let mut found = None;
            for y in 0..n {
                if mul(mul(x, y), x) == x && mul(mul(y, x), y) == y {
                    if let Some(first) = found {
                        return Err(Error::InverseNotUnique {
                            element: x,
                            first,
                            second: y,
                        });
                    }
                    found = Some(y);
                }
            }
            // Regularity guarantees an inverse: yxy is one whenever xyx = x.
            inv.push(found.expect("regular element without an inverse"));
        }

        let idempotent_set = Subset::from_elements(n, idempotents.iter().copied());
        Ok(InverseSemigroup {
            table,
            inv,
            idempotent_set,
            idempotents,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Element>>) -> Result<Self> {
        Self::from_cayley_table(CayleyTable::new(rows)?)
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table.get(a, b)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<I: IntoIterator<Item = Element>>(&self, factors: I) -> Option<Element> {
        factors.into_iter().reduce(|acc, x| self.mul(acc, x))
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inv[a]
    }

    pub fn inverse_map(&self) -> &[Element] {
        &self.inv
    }

    /// `a a⁻¹`, the idempotent of the R-class of `a`.
    #[inline]
    pub fn r_idempotent(&self, a: Element) -> Element {
        self.mul(a, self.inv[a])
    }

    /// `a⁻¹ a`, the idempotent of the L-class of `a`.
    #[inline]
    pub fn l_idempotent(&self, a: Element) -> Element {
        self.mul(self.inv[a], a)
    }

    /// Conjugate `g a g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: Element, a: Element) -> Element {
        self.mul(self.mul(g, a), self.inv[g])
    }

    #[inline]
    pub fn is_idempotent(&self, e: Element) -> bool {
        self.idempotent_set.contains(e)
    }

    /// Idempotents in increasing order.
    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    pub fn idempotent_set(&self) -> &Subset {
        &self.idempotent_set
    }

    pub fn is_group(&self) -> bool {
        self.idempotents.len() == 1
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_semilattice(&self) -> bool {
        self.idempotents.len() == self.order()
    }

    /// The identity element, if the semigroup is a monoid.
    pub fn identity(&self) -> Option<Element> {
        self.idempotents.iter().copied().find(|&e| {
            self.elements()
                .all(|x| self.mul(e, x) == x && self.mul(x, e) == x)
        })
    }

    /// Closed under product and inversion.
    pub fn is_inverse_subsemigroup(&self, set: &Subset) -> bool {
        set.iter()
            .all(|a| set.contains(self.inv(a)) && set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    pub fn green_relations(&self) -> GreenRelations {
        let n = self.order();
        let l = Partition::from_key(n, |a| self.l_idempotent(a));
        let r = Partition::from_key(n, |a| self.r_idempotent(a));
        let h = l.meet(&r);
        GreenRelations { l, r, h }
    }

    pub fn h_relation(&self) -> Partition {
        Partition::from_key(self.order(), |a| {
            (self.l_idempotent(a), self.r_idempotent(a))
        })
    }

    /// `C(S) = {a : ax = xa for all x}`.
    pub fn classical_center(&self) -> Subset {
        Subset::from_elements(
            self.order(),
            self.elements()
                .filter(|&a| self.elements().all(|x| self.mul(a, x) == self.mul(x, a))),
        )
    }

    /// Idempotents commute with every element.
    pub fn is_clifford(&self) -> bool {
        self.idempotents
            .iter()
            .all(|&e| self.elements().all(|x| self.mul(e, x) == self.mul(x, e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{brandt, chain, cyclic_group, symmetric_group};
    use crate::pbij::symmetric_inverse_monoid;

    #[test]
    fn trivial_table() {
        let s = InverseSemigroup::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(s.idempotents(), &[0]);
        assert!(s.is_group());
    }

    #[test]
    fn two_chain_is_a_semilattice() {
        let s = InverseSemigroup::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(s.inverse_map(), &[0, 1]);
        assert_eq!(s.idempotents().len(), 2);
        assert!(s.is_semilattice());
    }

    #[test]
    fn brandt_table_round_trips() {
        let b2 = brandt(&cyclic_group(1).unwrap(), 2).unwrap();
        let again = InverseSemigroup::from_rows(b2.table().rows()).unwrap();
        assert_eq!(again, b2);
        assert_eq!(again.order(), 5);
    }

    #[test]
    fn malformed_tables() {
        assert_eq!(CayleyTable::new(vec![]), Err(Error::EmptyTable));
        assert!(matches!(
            CayleyTable::new(vec![vec![0, 1], vec![0]]),
            Err(Error::RaggedTable { row: 1, .. })
        ));
        assert!(matches!(
            CayleyTable::new(vec![vec![2]]),
            Err(Error::EntryOutOfRange { .. })
        ));
    }

    #[test]
    fn non_associative_witness_is_least() {
        // x*y = y+1 mod 2 is not associative
        let err = InverseSemigroup::from_rows(vec![vec![1, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::NotAssociative(0, 0, 0));
    }

    #[test]
    fn left_zero_band_has_noncommuting_idempotents() {
        // xy = x: associative, regular, but idempotents 0, 1 do not commute
        let err = InverseSemigroup::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::IdempotentsDoNotCommute(0, 1));
    }

    #[test]
    fn null_semigroup_is_not_regular() {
        // {0, a} with all products 0
        let err = InverseSemigroup::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, Error::NotRegular(1));
    }

    #[test]
    fn order_cap_is_enforced() {
        let t = CayleyTable::from_fn(4, |a, b| a.max(b)).unwrap();
        assert_eq!(
            InverseSemigroup::from_cayley_table_capped(t, 3),
            Err(Error::OrderTooLarge { order: 4, cap: 3 })
        );
    }

    #[test]
    fn green_relations_on_extremes() {
        let g = symmetric_group(3).unwrap();
        let gr = g.green_relations();
        assert!(gr.l.is_universal() && gr.r.is_universal() && gr.h.is_universal());
        let c = chain(3).unwrap();
        let gr = c.green_relations();
        assert!(gr.l.is_discrete() && gr.r.is_discrete() && gr.h.is_discrete());
    }

    #[test]
    fn green_h_classes_of_is2() {
        let s = symmetric_inverse_monoid(2).unwrap().semigroup;
        let h = s.green_relations().h;
        let mut sizes: Vec<usize> = h.blocks().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 1, 1, 1, 2]);
        let unit = s.identity().unwrap();
        let units: Vec<_> = s
            .elements()
            .filter(|&x| s.mul(x, s.inv(x)) == unit && s.mul(s.inv(x), x) == unit)
            .collect();
        assert_eq!(units.len(), 2);
        assert!(h.related(units[0], units[1]));
    }

    #[test]
    fn classical_centers() {
        let b2 = brandt(&cyclic_group(1).unwrap(), 2).unwrap();
        assert_eq!(b2.classical_center().to_vec(), vec![4]);
        assert!(!b2.is_clifford());
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.classical_center().to_vec(), vec![s3.identity().unwrap()]);
        let z4 = cyclic_group(4).unwrap();
        assert_eq!(z4.classical_center().len(), 4);
        assert!(z4.is_clifford() && chain(3).unwrap().is_clifford());
    }

    #[test]
    fn group_detection() {
        assert!(cyclic_group(1).unwrap().is_group());
        let is2 = symmetric_inverse_monoid(2).unwrap().semigroup;
        assert_eq!(is2.idempotents().len(), 4);
        assert!(!is2.is_group());
        let b2 = brandt(&cyclic_group(1).unwrap(), 2).unwrap();
        assert_eq!(b2.idempotents().len(), 3);
        assert!(!b2.is_group());
    }
}
