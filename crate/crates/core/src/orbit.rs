//! Breadth-first orbit expansion feeding a span accumulator.
//!
//! Only orbit vectors that enlarge the running span are expanded further.
//! When a whole frontier generation adds nothing, every generator maps the
//! accumulated span into itself, so the span equals the span of the full
//! orbit. The expansion may also stop early once a caller-supplied target is
//! reached; that verdict is sound because every accepted vector is an orbit
//! element.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::error::Result;
use crate::lattice::{F2Span, IntLattice};

/// Resource caps for one orbit computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of orbit images computed.
    pub max_orbit: usize,
    /// Soft wall-clock cap.
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub const DEFAULT_MAX_ORBIT: usize = 50_000;
    pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(300);

    pub fn with_max_orbit(max_orbit: usize) -> Self {
        Self { max_orbit, ..Self::default() }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_orbit: Self::DEFAULT_MAX_ORBIT, time_limit: Some(Self::DEFAULT_TIME_LIMIT) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    /// A frontier generation added nothing: the span is closed.
    Closed,
    /// The caller's target predicate held.
    TargetReached,
    /// The orbit budget ran out before either of the above.
    BudgetExhausted,
    /// The wall-clock cap ran out.
    TimedOut,
}

impl OrbitStatus {
    pub fn is_conclusive(self) -> bool {
        matches!(self, Self::Closed | Self::TargetReached)
    }
}

#[derive(Clone, Debug)]
pub struct OrbitRun<V> {
    pub status: OrbitStatus,
    /// Orbit images computed (seeds included).
    pub generated: usize,
    /// Orbit vectors that enlarged the span, in acceptance order.
    pub accepted: Vec<V>,
    /// Completed frontier generations.
    pub generations: usize,
}

/// A running span that reports whether an inserted vector enlarged it.
pub trait Accumulator<V> {
    fn insert(&mut self, v: &V) -> Result<bool>;
}

impl Accumulator<Vec<i64>> for IntLattice {
    fn insert(&mut self, v: &Vec<i64>) -> Result<bool> {
        IntLattice::insert(self, v)
    }
}

impl Accumulator<Vec<u64>> for F2Span {
    fn insert(&mut self, v: &Vec<u64>) -> Result<bool> {
        self.insert_packed(v.clone())
    }
}

/// Expands `seeds` under `generator_count` generators.
///
/// `act(i, v)` computes generator `i` applied to `v`; `done(acc)` is the
/// early-stop target.
pub fn expand<V, S, A, D>(
    seeds: &[V],
    generator_count: usize,
    budget: &Budget,
    mut act: A,
    acc: &mut S,
    done: D,
) -> Result<OrbitRun<V>>
where
    V: Clone,
    S: Accumulator<V>,
    A: FnMut(usize, &V) -> Result<V>,
    D: Fn(&S) -> bool,
{
    let start = Instant::now();
    let mut run = OrbitRun { status: OrbitStatus::Closed, generated: 0, accepted: Vec::new(), generations: 0 };
    let mut frontier: VecDeque<V> = VecDeque::new();

    for seed in seeds {
        run.generated += 1;
        if acc.insert(seed)? {
            run.accepted.push(seed.clone());
            frontier.push_back(seed.clone());
        }
    }

    while !frontier.is_empty() {
        if done(acc) {
            run.status = OrbitStatus::TargetReached;
            return Ok(run);
        }
        let mut next = VecDeque::new();
        for v in frontier.drain(..) {
            for gen in 0..generator_count {
                if run.generated >= budget.max_orbit {
                    run.status = OrbitStatus::BudgetExhausted;
                    return Ok(run);
                }
                if budget.time_limit.is_some_and(|t| start.elapsed() > t) {
                    run.status = OrbitStatus::TimedOut;
                    return Ok(run);
                }
                let image = act(gen, &v)?;
                run.generated += 1;
                if acc.insert(&image)? {
                    run.accepted.push(image.clone());
                    next.push_back(image);
                }
            }
        }
        run.generations += 1;
        frontier = next;
    }
    run.status = if done(acc) { OrbitStatus::TargetReached } else { OrbitStatus::Closed };
    Ok(run)
}
