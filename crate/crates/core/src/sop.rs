//! Two-level minimization of incompletely specified functions.
//!
//! Quine-McCluskey prime generation followed by an essential-prime plus
//! greedy cover. Good enough for the 9-variable tables used here; not meant
//! for wide functions.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

/// A product term. Bits set in `mask` are free; the rest must equal `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub value: u32,
    pub mask: u32,
}

impl Cube {
    pub fn minterm(m: u32) -> Self {
        Self { value: m, mask: 0 }
    }

    pub fn covers(&self, m: u32) -> bool {
        (m & !self.mask) == (self.value & !self.mask)
    }

    pub fn literal_count(&self, vars: usize) -> usize {
        vars - (self.mask.count_ones() as usize)
    }

    fn merge(&self, other: &Cube) -> Option<Cube> {
        if self.mask != other.mask {
            return None;
        }
        let diff = self.value ^ other.value;
        if diff.count_ones() == 1 && diff & self.mask == 0 {
            Some(Cube {
                value: self.value & !diff,
                mask: self.mask | diff,
            })
        } else {
            None
        }
    }
}

/// A sum of products over `vars` inputs with named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sop {
    pub names: Vec<String>,
    pub cubes: Vec<Cube>,
}

impl Sop {
    pub fn eval(&self, input: u32) -> bool {
        self.cubes.iter().any(|c| c.covers(input))
    }

    pub fn literal_count(&self) -> usize {
        self.cubes
            .iter()
            .map(|c| c.literal_count(self.names.len()))
            .sum()
    }
}

impl fmt::Display for Sop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cubes.is_empty() {
            return f.write_str("0");
        }
        for (i, cube) in self.cubes.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut first = true;
            for (v, name) in self.names.iter().enumerate().rev() {
                if cube.mask >> v & 1 == 1 {
                    continue;
                }
                if !first {
                    f.write_str("·")?;
                }
                first = false;
                if cube.value >> v & 1 == 0 {
                    f.write_str("~")?;
                }
                f.write_str(name)?;
            }
            if first {
                f.write_str("1")?;
            }
        }
        Ok(())
    }
}

/// Value of one truth-table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Row {
    Off,
    On,
    DontCare,
}

fn prime_implicants(vars: usize, care: &[u32]) -> Vec<Cube> {
    let mut current: HashSet<Cube> = care.iter().map(|&m| Cube::minterm(m)).collect();
    let mut primes = BTreeSet::new();
    while !current.is_empty() {
        let mut next = HashSet::new();
        for cube in &current {
            let mut merged = false;
            for v in 0..vars {
                let bit = 1 << v;
                if cube.mask & bit != 0 {
                    continue;
                }
                let partner = Cube {
                    value: cube.value ^ bit,
                    mask: cube.mask,
                };
                if let Some(m) = cube.merge(&partner).filter(|_| current.contains(&partner)) {
                    merged = true;
                    next.insert(m);
                }
            }
            if !merged {
                primes.insert(*cube);
            }
        }
        current = next;
    }
    primes.into_iter().collect()
}

/// Minimizes the function given by `rows` (indexed by input pattern).
pub fn minimize(names: &[&str], rows: &[Row]) -> Sop {
    let vars = names.len();
    assert_eq!(rows.len(), 1 << vars, "truth table must have 2^vars rows");
    let on: Vec<u32> = (0..rows.len() as u32)
        .filter(|&m| rows[m as usize] == Row::On)
        .collect();
    let care: Vec<u32> = (0..rows.len() as u32)
        .filter(|&m| rows[m as usize] != Row::Off)
        .collect();
    let primes = prime_implicants(vars, &care);

    let mut uncovered: BTreeSet<u32> = on.iter().copied().collect();
    let mut chosen: Vec<Cube> = Vec::new();

    // Essential primes: the only prime covering some on-set minterm.
    for &m in &on {
        let covering: Vec<&Cube> = primes.iter().filter(|p| p.covers(m)).collect();
        if covering.len() == 1 && !chosen.contains(covering[0]) {
            chosen.push(*covering[0]);
        }
    }
    uncovered.retain(|&m| !chosen.iter().any(|c| c.covers(m)));

    // Greedy: most newly covered minterms, then fewest literals, then cube order.
    while !uncovered.is_empty() {
        let best = primes
            .iter()
            .filter(|p| !chosen.contains(p))
            .max_by(|a, b| {
                let ca = uncovered.iter().filter(|&&m| a.covers(m)).count();
                let cb = uncovered.iter().filter(|&&m| b.covers(m)).count();
                ca.cmp(&cb)
                    .then(b.literal_count(vars).cmp(&a.literal_count(vars)))
                    .then(b.cmp(a))
            })
            .copied()
            .expect("every on-set minterm is covered by some prime");
        chosen.push(best);
        uncovered.retain(|&m| !best.covers(m));
    }
    chosen.sort();
    Sop {
        names: names.iter().map(|s| s.to_string()).collect(),
        cubes: chosen,
    }
}
