use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Orientation;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

macro_rules! vertex_map {
    ($name:ident) => {
        impl $name {
            pub fn get(&self, v: Vertex) -> Option<u32> {
                self.0.get(&v).copied()
            }

            pub fn as_map(&self) -> &BTreeMap<Vertex, u32> {
                &self.0
            }

            pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
                self.0.iter().map(|(&v, &x)| (v, x))
            }

            pub fn values(&self) -> impl Iterator<Item = u32> + '_ {
                self.0.values().copied()
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn sum(&self) -> u64 {
                self.0.values().map(|&x| x as u64).sum()
            }
        }

        impl From<BTreeMap<Vertex, u32>> for $name {
            fn from(m: BTreeMap<Vertex, u32>) -> Self {
                $name(m)
            }
        }

        impl FromIterator<(Vertex, u32)> for $name {
            fn from_iter<I: IntoIterator<Item = (Vertex, u32)>>(it: I) -> Self {
                $name(it.into_iter().collect())
            }
        }
    };
}

/// Per-vertex target exponents (an out-degree vector).
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct OutDegreeVector(BTreeMap<Vertex, u32>);

vertex_map!(OutDegreeVector);

impl OutDegreeVector {
    /// `d` with the entry at `v` lowered by one.
    pub fn decremented(&self, v: Vertex) -> Option<OutDegreeVector> {
        let mut m = self.0.clone();
        let x = m.get_mut(&v)?;
        *x = x.checked_sub(1)?;
        Some(OutDegreeVector(m))
    }
}

/// A budget function `f`: an orientation honours it when every vertex has
/// out-degree at most `f(v) - 1`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct DegreeBudget(BTreeMap<Vertex, u32>);

vertex_map!(DegreeBudget);

impl DegreeBudget {
    pub fn constant(graph: &Graph, k: u32) -> Self {
        graph.vertices().map(|v| (v, k)).collect()
    }

    /// Tight budget `d+(v) + 1`.
    pub fn tight(o: &Orientation) -> Self {
        o.out_degrees().iter().map(|(v, d)| (v, d + 1)).collect()
    }

    /// `f_[X,-1]`.
    pub fn reduced(&self, xs: &[Vertex]) -> Result<DegreeBudget> {
        let mut m = self.0.clone();
        for v in xs {
            let x = m.get_mut(v).ok_or_else(|| Error::unknown_vertex(*v))?;
            *x = x
                .checked_sub(1)
                .ok_or_else(|| Error::Precondition(format!("budget at {v} is already 0")))?;
        }
        Ok(DegreeBudget(m))
    }

    pub fn reduced_at(&self, v: Vertex) -> Result<DegreeBudget> {
        self.reduced(&[v])
    }

    pub fn with_value(&self, v: Vertex, x: u32) -> DegreeBudget {
        let mut m = self.0.clone();
        m.insert(v, x);
        DegreeBudget(m)
    }

    pub fn without(&self, v: Vertex) -> DegreeBudget {
        let mut m = self.0.clone();
        m.remove(&v);
        DegreeBudget(m)
    }

    /// The budget restricted to the vertices of `graph`.
    pub fn restricted_to(&self, graph: &Graph) -> Result<DegreeBudget> {
        graph
            .vertices()
            .map(|v| self.get(v).map(|x| (v, x)).ok_or_else(|| Error::unknown_vertex(v)))
            .collect::<Result<BTreeMap<_, _>>>()
            .map(DegreeBudget)
    }

    /// Pointwise union; on shared vertices both values must agree.
    pub fn merged(&self, other: &DegreeBudget) -> Result<DegreeBudget> {
        let mut m = self.0.clone();
        for (v, x) in other.iter() {
            if let Some(y) = m.insert(v, x) {
                if y != x {
                    return Err(Error::Precondition(format!("budgets disagree at {v}")));
                }
            }
        }
        Ok(DegreeBudget(m))
    }

    /// Vertices where `self(v) > bound(v)` (or that `bound` lacks).
    pub fn exceeding(&self, bound: &DegreeBudget) -> Vec<Vertex> {
        self.iter()
            .filter(|&(v, x)| bound.get(v).is_none_or(|b| x > b))
            .map(|(v, _)| v)
            .collect()
    }

    /// Vertices whose out-degree in `o` exceeds `f(v) - 1`, or that the
    /// budget does not cover.
    pub fn violations(&self, o: &Orientation) -> Vec<Vertex> {
        o.out_degrees()
            .iter()
            .filter(|&(v, d)| self.get(v).is_none_or(|f| d + 1 > f))
            .map(|(v, _)| v)
            .collect()
    }
}
