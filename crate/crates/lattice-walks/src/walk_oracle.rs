//! Ground-truth enumeration of closed-walk area distributions by exact
//! dynamic programming over `(x, y, area)`, plus a naive `4^n` enumerator
//! that validates the DP itself.
//!
//! Area convention: a step up adds `x` to the running `Σ x·dy`, a step
//! down subtracts `x`; the counterclockwise unit square traversed from
//! the origin encloses area +1.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::area_enum::AreaDistribution;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Right,
    Left,
    Up,
    Down,
}

pub const STEPS: [Step; 4] = [Step::Right, Step::Left, Step::Up, Step::Down];

/// Walker state during enumeration. `area2` accumulates `Σ x·dy`, which
/// equals the enclosed algebraic area once the walk closes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WalkState {
    pub x: i64,
    pub y: i64,
    pub area2: i64,
    pub steps_taken: u64,
    pub horizontal_steps: u64,
}

impl WalkState {
    pub fn step(&self, s: Step) -> WalkState {
        let mut next = *self;
        match s {
            Step::Right => {
                next.x += 1;
                next.horizontal_steps += 1;
            }
            Step::Left => {
                next.x -= 1;
                next.horizontal_steps += 1;
            }
            Step::Up => {
                next.y += 1;
                next.area2 += self.x;
            }
            Step::Down => {
                next.y -= 1;
                next.area2 -= self.x;
            }
        }
        next.steps_taken += 1;
        next
    }

    pub fn is_closed(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

fn check_length(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    Ok(())
}

/// Which coordinate sweep accumulates the area.
#[derive(Debug, Clone, Copy)]
enum AreaRule {
    /// `Σ x·dy` over vertical steps.
    Vertical,
    /// `Σ (-y)·dx` over horizontal steps (shoelace counterpart).
    Horizontal,
}

/// Dense layered DP over `(x, y, area)`. Practical ceiling n = 16.
fn dp_areas(n: u64, rule: AreaRule) -> Result<AreaDistribution> {
    check_length(n)?;
    let n_i = n as i64;
    let half = n_i / 2;
    // |area| along a partial walk never exceeds n^2/4
    let amax = n_i * n_i / 4;
    let span = 2 * half + 1;
    let aspan = 2 * amax + 1;
    let size = (span * span * aspan) as usize;
    let index = |x: i64, y: i64, a: i64| -> usize {
        (((x + half) * span + (y + half)) * aspan + (a + amax)) as usize
    };

    let mut layer = vec![BigInt::zero(); size];
    layer[index(0, 0, 0)] = BigInt::one();
    for step in 0..n_i {
        let mut next = vec![BigInt::zero(); size];
        let reach = step.min(half);
        for x in -reach..=reach {
            for y in -reach..=reach {
                if (x + y - step) % 2 != 0 || x.abs() + y.abs() > step {
                    continue;
                }
                // |area| <= h*v <= n^2/4 for any partial walk with h
                // horizontal and v vertical steps
                for a in -amax..=amax {
                    let count = &layer[index(x, y, a)];
                    if count.is_zero() {
                        continue;
                    }
                    let moves: [(i64, i64, i64); 4] = match rule {
                        AreaRule::Vertical => {
                            [(1, 0, 0), (-1, 0, 0), (0, 1, x), (0, -1, -x)]
                        }
                        AreaRule::Horizontal => {
                            [(1, 0, -y), (-1, 0, y), (0, 1, 0), (0, -1, 0)]
                        }
                    };
                    for (dx, dy, da) in moves {
                        let (nx, ny, na) = (x + dx, y + dy, a + da);
                        if nx.abs() > half || ny.abs() > half || na.abs() > amax {
                            continue;
                        }
                        next[index(nx, ny, na)] += count;
                    }
                }
            }
        }
        layer = next;
    }

    let mut counts = BTreeMap::new();
    for a in -amax..=amax {
        let c = &layer[index(0, 0, a)];
        if !c.is_zero() {
            counts.insert(a, c.clone());
        }
    }
    Ok(AreaDistribution::from_counts(n, counts))
}

/// Exact distribution over all `4^n` closed walks of length `n`,
/// computed by layered dynamic programming.
pub fn oracle_areas(n: u64) -> Result<AreaDistribution> {
    dp_areas(n, AreaRule::Vertical)
}

/// Same distribution with the area recomputed as `Σ (-y)·dx` over
/// horizontal steps; equals [`oracle_areas`] by the closed-curve
/// identity `∮ x dy = -∮ y dx`.
pub fn oracle_areas_shoelace(n: u64) -> Result<AreaDistribution> {
    dp_areas(n, AreaRule::Horizontal)
}

/// Step-resolved oracle: entry `m` of the returned table is the area
/// distribution of closed walks with exactly `m` right and `m` left
/// steps. Summed over `m` it reproduces [`oracle_areas`].
pub fn oracle_areas_by_steps(n: u64) -> Result<Vec<BTreeMap<i64, BigInt>>> {
    check_length(n)?;
    let n_i = n as i64;
    let half = n_i / 2;
    let amax = n_i * n_i / 4;

    // sparse layers: reachable (x, y, area, horizontal_steps) states
    let mut layer: HashMap<(i64, i64, i64, u64), BigInt> = HashMap::new();
    layer.insert((0, 0, 0, 0), BigInt::one());
    for _ in 0..n {
        let mut next: HashMap<(i64, i64, i64, u64), BigInt> =
            HashMap::with_capacity(layer.len() * 2);
        for ((x, y, a, hs), count) in &layer {
            let moves: [(i64, i64, i64, u64); 4] = [
                (x + 1, *y, *a, hs + 1),
                (x - 1, *y, *a, hs + 1),
                (*x, y + 1, a + x, *hs),
                (*x, y - 1, a - x, *hs),
            ];
            for state in moves {
                if state.0.abs() > half || state.1.abs() > half || state.2.abs() > amax {
                    continue;
                }
                *next.entry(state).or_insert_with(BigInt::zero) += count;
            }
        }
        layer = next;
    }

    let mut table = vec![BTreeMap::new(); (half + 1) as usize];
    for ((x, y, a, hs), count) in layer {
        if x == 0 && y == 0 {
            debug_assert_eq!(hs % 2, 0);
            table[(hs / 2) as usize].insert(a, count);
        }
    }
    Ok(table)
}

/// Literal enumeration of every step sequence; capped at n = 10.
pub fn oracle_naive(n: u64) -> Result<AreaDistribution> {
    check_length(n)?;
    if n > 10 {
        return Err(Error::NaiveCapExceeded(n));
    }
    let mut counts: BTreeMap<i64, BigInt> = BTreeMap::new();
    let mut stack = vec![WalkState::default()];
    while let Some(state) = stack.pop() {
        if state.steps_taken == n {
            if state.is_closed() {
                *counts.entry(state.area2).or_insert_with(BigInt::zero) +=
                    BigInt::one();
            }
            continue;
        }
        // prune: too far from the origin to return in time
        let remaining = (n - state.steps_taken) as i64;
        if state.x.abs() + state.y.abs() > remaining {
            continue;
        }
        for s in STEPS {
            stack.push(state.step(s));
        }
    }
    Ok(AreaDistribution::from_counts(n, counts))
}
