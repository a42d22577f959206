use crate::error::Result;
use crate::function::{CertificateCollection, PartialAssignment, TruthTable};
use crate::measures::certificate::{certificate_complexity_b, is_monochromatic};
use crate::measures::sensitivity::check_cap;

/// Exact UC search enumerates all 3^n subcubes; 3^8 = 6561.
pub const UC_CAP: usize = 8;

pub const DEFAULT_UC_NODE_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum UcOutcome {
    /// Exact value with an optimal unambiguous collection.
    Exact {
        value: usize,
        collection: CertificateCollection,
    },
    /// The node budget ran out while deciding whether `lower` is attainable.
    /// `upper` is a valid (possibly loose) bound.
    Exhausted { lower: usize, upper: usize },
}

impl UcOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            UcOutcome::Exact { value, .. } => Some(*value),
            UcOutcome::Exhausted { .. } => None,
        }
    }
}

pub fn uc1(table: &TruthTable, node_budget: u64) -> Result<UcOutcome> {
    uc_b(table, true, node_budget)
}

/// UC_b(f): the least d such that f⁻¹(b) can be partitioned into
/// b-monochromatic subcubes of co-dimension at most d.
///
/// For each d from C_b(f) upward, a depth-first exact cover picks the
/// lowest uncovered b-input and tries every disjoint monochromatic subcube
/// containing it, largest first.
pub fn uc_b(table: &TruthTable, b: bool, node_budget: u64) -> Result<UcOutcome> {
    let n = table.arity();
    check_cap("unambiguous certificate search", n, UC_CAP)?;
    let lower = match certificate_complexity_b(table, b)? {
        Some((c, _, _)) => c,
        None => {
            return Ok(UcOutcome::Exact {
                value: 0,
                collection: CertificateCollection::new(b, vec![], true),
            })
        }
    };

    let size = 1usize << n;
    let mut by_point: Vec<Vec<Subcube>> = vec![Vec::new(); size];
    for mask in 0..1u64 << n {
        // every value ⊆ mask
        let mut value = mask;
        loop {
            if is_monochromatic(table, mask, value, b) {
                let cube = Subcube::new(n, mask, value);
                for x in PartialAssignment::from_mask(n, mask, value).points() {
                    by_point[x as usize].push(cube.clone());
                }
            }
            if value == 0 {
                break;
            }
            value = (value - 1) & mask;
        }
    }
    for list in &mut by_point {
        list.sort_by_key(|c| (c.codim, c.mask, c.value));
    }

    let mut target = [0u64; 4];
    for x in 0..size {
        if table.get(x as u64) == b {
            target[x >> 6] |= 1 << (x & 63);
        }
    }

    let mut search = Search {
        by_point: &by_point,
        target,
        nodes: 0,
        budget: node_budget,
        chosen: Vec::new(),
    };
    for d in lower..=n {
        match search.cover([0; 4], d) {
            Some(true) => {
                let certs = search
                    .chosen
                    .iter()
                    .map(|c| PartialAssignment::from_mask(n, c.mask, c.value))
                    .collect();
                return Ok(UcOutcome::Exact {
                    value: d,
                    collection: CertificateCollection::new(b, certs, true),
                });
            }
            Some(false) => continue,
            None => return Ok(UcOutcome::Exhausted { lower: d, upper: n }),
        }
    }
    unreachable!("single points always give a cover at d = n")
}

#[derive(Clone, Debug)]
struct Subcube {
    mask: u64,
    value: u64,
    codim: usize,
    points: [u64; 4],
}

impl Subcube {
    fn new(n: usize, mask: u64, value: u64) -> Self {
        let mut points = [0u64; 4];
        for x in PartialAssignment::from_mask(n, mask, value).points() {
            points[(x >> 6) as usize] |= 1 << (x & 63);
        }
        Subcube {
            mask,
            value,
            codim: mask.count_ones() as usize,
            points,
        }
    }
}

struct Search<'a> {
    by_point: &'a [Vec<Subcube>],
    target: [u64; 4],
    nodes: u64,
    budget: u64,
    chosen: Vec<Subcube>,
}

impl Search<'_> {
    /// `Some(found)` or `None` when the budget is exhausted.
    fn cover(&mut self, covered: [u64; 4], d: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let next = (0..4).find_map(|w| {
            let open = self.target[w] & !covered[w];
            (open != 0).then(|| w * 64 + open.trailing_zeros() as usize)
        });
        let Some(x) = next else {
            return Some(true);
        };
        for cube in &self.by_point[x] {
            if cube.codim > d {
                break;
            }
            if (0..4).any(|w| cube.points[w] & covered[w] != 0) {
                continue;
            }
            let mut now = covered;
            for (word, points) in now.iter_mut().zip(cube.points) {
                *word |= points;
            }
            self.chosen.push(cube.clone());
            match self.cover(now, d) {
                Some(true) => return Some(true),
                Some(false) => {
                    self.chosen.pop();
                }
                None => return None,
            }
        }
        Some(false)
    }
}
