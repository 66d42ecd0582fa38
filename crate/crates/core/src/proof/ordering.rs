use std::cmp;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::constructions::Rng;
use crate::error::{parse_err, Error, Result};
use crate::family::text::data_lines;
use crate::family::GroundSet;

/// A total order `≺` on the ground set, stored as the elements listed from
/// `≺`-least to `≺`-greatest.
///
/// File format: one line of space-separated elements in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Ordering {
    order: Vec<u32>,
    rank: Vec<u32>,
}

impl Ordering {
    pub fn new(order: Vec<u32>) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![u32::MAX; n];
        for (pos, &x) in order.iter().enumerate() {
            if x as usize >= n || rank[x as usize] != u32::MAX {
                return Err(Error::InvalidArgument(format!(
                    "ordering is not a permutation of 0..{n}"
                )));
            }
            rank[x as usize] = pos as u32;
        }
        Ok(Self { order, rank })
    }

    pub fn identity(ground: GroundSet) -> Self {
        Self::new(ground.elements().collect()).expect("identity is a permutation")
    }

    pub fn random(ground: GroundSet, rng: &mut Rng) -> Self {
        let mut order: Vec<u32> = ground.elements().collect();
        order.shuffle(rng);
        Self::new(order).expect("shuffle is a permutation")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Elements from least to greatest.
    pub fn elements(&self) -> &[u32] {
        &self.order
    }

    #[inline]
    pub fn rank(&self, x: u32) -> u32 {
        self.rank[x as usize]
    }

    /// `x ≺ y`
    #[inline]
    pub fn precedes(&self, x: u32, y: u32) -> bool {
        self.rank(x) < self.rank(y)
    }

    pub fn compare(&self, x: u32, y: u32) -> cmp::Ordering {
        self.rank(x).cmp(&self.rank(y))
    }

    pub fn fits(&self, ground: GroundSet) -> bool {
        self.order.len() == ground.size()
    }
}

impl TryFrom<Vec<u32>> for Ordering {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Ordering::new(v)
    }
}

impl From<Ordering> for Vec<u32> {
    fn from(o: Ordering) -> Vec<u32> {
        o.order
    }
}

pub fn parse_ordering(text: &str) -> Result<Ordering> {
    let mut lines = data_lines(text);
    let (line, content) = lines.next().ok_or_else(|| parse_err(1, "missing ordering line"))?;
    let order = content
        .split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| parse_err(line, format!("malformed element '{t}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "ordering must be a single line"));
    }
    Ordering::new(order).map_err(|e| parse_err(line, e.to_string()))
}

pub fn serialize_ordering(ord: &Ordering) -> String {
    let mut s = ord
        .elements()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_compare() {
        let o = parse_ordering("# least first\n2 0 1\n").unwrap();
        assert!(o.precedes(2, 0) && o.precedes(0, 1) && !o.precedes(1, 2));
        assert_eq!(serialize_ordering(&o), "2 0 1\n");
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(parse_ordering("0 0 1\n").is_err());
        assert!(parse_ordering("0 3\n").is_err());
        assert!(parse_ordering("0 1\n1 0\n").is_err());
        assert!(parse_ordering("0 x\n").is_err());
    }
}
