//! The JSON table format `{"name": ..., "order": n, "table": [[...], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::semigroup::{CayleyTable, Element, InverseSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<Element>>,
}

impl SemigroupFile {
    pub fn new(name: Option<&str>, s: &InverseSemigroup) -> Self {
        SemigroupFile {
            name: name.map(str::to_owned),
            order: s.order(),
            table: s.table().rows(),
        }
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Compact JSON with a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec(self).expect("plain data serializes");
        out.push(b'\n');
        out
    }

    pub fn to_semigroup(&self, limits: &Limits) -> Result<InverseSemigroup> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!(
                "order is {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        InverseSemigroup::from_cayley_table_capped(
            CayleyTable::new(self.table.clone())?,
            limits.order_cap,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::chain;

    #[test]
    fn bytes() {
        let f = SemigroupFile::new(Some("chain2"), &chain(2).unwrap());
        assert_eq!(
            f.to_bytes(),
            b"{\"name\":\"chain2\",\"order\":2,\"table\":[[0,1],[1,1]]}\n"
        );
        let back = SemigroupFile::from_slice(&f.to_bytes()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_semigroup(&Limits::default()).unwrap().order(), 2);
        let unnamed = SemigroupFile::from_slice(b"{\"order\":1,\"table\":[[0]]}").unwrap();
        assert_eq!(unnamed.name, None);
    }

    #[test]
    fn bad_input() {
        assert!(matches!(
            SemigroupFile::from_slice(b"{\"order\":"),
            Err(Error::Parse(_))
        ));
        let f = SemigroupFile::from_slice(b"{\"order\":2,\"table\":[[0]]}").unwrap();
        assert!(matches!(
            f.to_semigroup(&Limits::default()),
            Err(Error::Parse(_))
        ));
        let f = SemigroupFile::from_slice(b"{\"order\":2,\"table\":[[0,1],[1,0]]}").unwrap();
        assert!(f.to_semigroup(&Limits::default()).unwrap().is_group());
    }
}
