use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{edge_order, Orientation};
use crate::error::{Error, Result};

pub const DEFAULT_ENUM_CAP: usize = 24;

/// Even and odd Eulerian sub-digraph counts of an orientation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EulerianCount {
    pub even_count: u64,
    pub odd_count: u64,
    pub diff: i128,
}

/// Exact `diff(D)` by enumerating balanced arc subsets.
pub fn diff_enum(o: &Orientation) -> Result<EulerianCount> {
    diff_enum_capped(o, DEFAULT_ENUM_CAP)
}

pub fn diff_enum_capped(o: &Orientation, cap: usize) -> Result<EulerianCount> {
    if o.num_arcs() > cap {
        return Err(Error::CapExceeded {
            what: "arc count for Eulerian enumeration",
            size: o.num_arcs(),
            cap,
        });
    }
    let index: BTreeMap<_, usize> = o.graph().vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let n = index.len();
    let arcs: Vec<(usize, usize)> = edge_order(o.graph())
        .into_iter()
        .map(|e| {
            let a = o.arc_of(e).unwrap();
            (index[&a.tail], index[&a.head])
        })
        .collect();
    let mut rem_out = vec![0i32; n];
    let mut rem_in = vec![0i32; n];
    for &(t, h) in &arcs {
        rem_out[t] += 1;
        rem_in[h] += 1;
    }
    let mut search = Search {
        arcs: &arcs,
        balance: vec![0; n],
        rem_out,
        rem_in,
        counts: [0, 0],
    };
    search.run(0, 0);
    let [even_count, odd_count] = search.counts;
    Ok(EulerianCount {
        even_count,
        odd_count,
        diff: even_count as i128 - odd_count as i128,
    })
}

struct Search<'a> {
    arcs: &'a [(usize, usize)],
    /// selected out-arcs minus selected in-arcs
    balance: Vec<i32>,
    rem_out: Vec<i32>,
    rem_in: Vec<i32>,
    counts: [u64; 2],
}

impl Search<'_> {
    fn feasible(&self, v: usize) -> bool {
        let b = self.balance[v];
        b <= self.rem_in[v] && -b <= self.rem_out[v]
    }

    fn run(&mut self, i: usize, size: usize) {
        if i == self.arcs.len() {
            self.counts[size % 2] += 1;
            return;
        }
        let (t, h) = self.arcs[i];
        self.rem_out[t] -= 1;
        self.rem_in[h] -= 1;

        if self.feasible(t) && self.feasible(h) {
            self.run(i + 1, size);
        }
        self.balance[t] += 1;
        self.balance[h] -= 1;
        if self.feasible(t) && self.feasible(h) {
            self.run(i + 1, size + 1);
        }
        self.balance[t] -= 1;
        self.balance[h] += 1;

        self.rem_out[t] += 1;
        self.rem_in[h] += 1;
    }
}
