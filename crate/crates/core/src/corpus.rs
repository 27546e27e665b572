//! The standard example collection.

use crate::construct::{
    brandt, chain, cyclic_group, dihedral_group, direct_product, quaternion_group,
    strong_semilattice_of_groups, symmetric_group, Link,
};
use crate::error::Result;
use crate::pbij::symmetric_inverse_monoid;
use crate::semigroup::InverseSemigroup;

pub const CORPUS_NAMES: [&str; 18] = [
    "trivial",
    "chain2",
    "chain3",
    "chain4",
    "z2",
    "z4",
    "s3",
    "d4",
    "q8",
    "brandt_1_2",
    "brandt_z2_2",
    "is1",
    "is2",
    "is3",
    "ssg_z2_z2",
    "ssg_d4_z2",
    "product_b2_z2",
    "product_chain2_s3",
];

#[derive(Debug, Clone)]
pub struct CorpusMember {
    pub name: &'static str,
    pub semigroup: InverseSemigroup,
}

/// `Z2` above `Z2` with the identity link: a commutative Clifford semigroup.
pub fn commutative_clifford() -> Result<InverseSemigroup> {
    let z2 = cyclic_group(2)?;
    let link = Link {
        from: 0,
        to: 1,
        map: vec![0, 1],
    };
    strong_semilattice_of_groups(&chain(2)?, &[z2.clone(), z2], &[link])
}

/// `D4` above `Z2`, linked by the reflection-parity homomorphism.
pub fn mixed_class_clifford() -> Result<InverseSemigroup> {
    let d4 = dihedral_group(4)?;
    let parity = d4.elements().map(|x| x / 4).collect();
    let link = Link {
        from: 0,
        to: 1,
        map: parity,
    };
    strong_semilattice_of_groups(&chain(2)?, &[d4, cyclic_group(2)?], &[link])
}

pub fn build(name: &str) -> Option<Result<InverseSemigroup>> {
    CORPUS_NAMES.contains(&name).then(|| construct(name))
}

fn construct(name: &str) -> Result<InverseSemigroup> {
    let trivial = || cyclic_group(1);
    match name {
        "trivial" => trivial(),
        "chain2" => chain(2),
        "chain3" => chain(3),
        "chain4" => chain(4),
        "z2" => cyclic_group(2),
        "z4" => cyclic_group(4),
        "s3" => symmetric_group(3),
        "d4" => dihedral_group(4),
        "q8" => quaternion_group(),
        "brandt_1_2" => trivial().and_then(|g| brandt(&g, 2)),
        "brandt_z2_2" => cyclic_group(2).and_then(|g| brandt(&g, 2)),
        "is1" => symmetric_inverse_monoid(1).map(|g| g.semigroup),
        "is2" => symmetric_inverse_monoid(2).map(|g| g.semigroup),
        "is3" => symmetric_inverse_monoid(3).map(|g| g.semigroup),
        "ssg_z2_z2" => commutative_clifford(),
        "ssg_d4_z2" => mixed_class_clifford(),
        "product_b2_z2" => trivial()
            .and_then(|g| brandt(&g, 2))
            .and_then(|b| direct_product(&b, &cyclic_group(2)?)),
        "product_chain2_s3" => direct_product(&chain(2)?, &symmetric_group(3)?),
        other => unreachable!("not a corpus member: {other}"),
    }
}

pub fn corpus() -> Result<Vec<CorpusMember>> {
    CORPUS_NAMES
        .iter()
        .map(|&name| {
            Ok(CorpusMember {
                name,
                semigroup: build(name).expect("listed name")?,
            })
        })
        .collect()
}
