use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::poly::Monomial;

/// Monomial orders. `Block` compares consecutive variable blocks in turn,
/// each by degrevlex; `Block(vec![k, n - k])` eliminates the first `k`
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    Block(Vec<usize>),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Block(sizes) => {
                let mut start = 0;
                for &s in sizes {
                    let end = (start + s).min(a.0.len());
                    match degrevlex(&a.0[start..end], &b.0[start..end]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                    start = end;
                }
                if start < a.0.len() {
                    degrevlex(&a.0[start..], &b.0[start..])
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    /// Elimination order for the first `k` of `n` variables.
    pub fn eliminate(k: usize, n: usize) -> Self {
        MonomialOrder::Block(vec![k, n - k])
    }
}
