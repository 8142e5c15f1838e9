//! The area, dinv and bounce statistics of an area sequence.

use serde::Serialize;

use crate::dyck::AreaSequence;

/// Sum of the letters.
pub fn area(w: &AreaSequence) -> u64 {
    w.letters().iter().map(|&x| x as u64).sum()
}

/// Per-letter dinv contributions `d_i` and their total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DinvProfile {
    pub d: Vec<u64>,
    pub total: u64,
}

/// `d_i` counts the later letters equal to `w_i` or `w_i - 1`.
pub fn dinv_profile(w: &AreaSequence) -> DinvProfile {
    let letters = w.letters();
    let mut seen = vec![0u64; letters.len() + 1];
    let mut d = vec![0u64; letters.len()];
    for (i, &x) in letters.iter().enumerate().rev() {
        d[i] = seen[x] + if x > 0 { seen[x - 1] } else { 0 };
        seen[x] += 1;
    }
    let total = d.iter().sum();
    DinvProfile { d, total }
}

pub fn dinv(w: &AreaSequence) -> u64 {
    dinv_profile(w).total
}

/// Bounce sequence `b`, its bounces (1-based positions `i > 1` with `b_i = 0`)
/// and the bounce statistic, the sum of their reversed positions `n - i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BounceProfile {
    pub b: AreaSequence,
    pub bounces: Vec<usize>,
    pub bounce: u64,
}

pub fn bounce_profile(w: &AreaSequence) -> BounceProfile {
    let n = w.len();
    let mut b = Vec::with_capacity(n);
    let mut bounces = Vec::new();
    for (i, &x) in w.letters().iter().enumerate() {
        let next = match b.last() {
            None => 0,
            Some(&prev) if prev < x => prev + 1,
            Some(_) => {
                bounces.push(i + 1);
                0
            }
        };
        b.push(next);
    }
    let bounce = bounces.iter().map(|&i| (n - i + 1) as u64).sum();
    BounceProfile { b: AreaSequence::from_vec_unchecked(b), bounces, bounce }
}

pub fn bounce(w: &AreaSequence) -> u64 {
    bounce_profile(w).bounce
}

/// The fixed-field statistics record emitted by the `stats` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatReport {
    pub n: usize,
    pub w: AreaSequence,
    pub area: u64,
    pub dinv: u64,
    pub dinv_profile: Vec<u64>,
    pub bounce: u64,
    pub bounce_sequence: AreaSequence,
    pub bounces: Vec<usize>,
}

impl StatReport {
    pub fn of(w: &AreaSequence) -> Self {
        let dinv = dinv_profile(w);
        let bounce = bounce_profile(w);
        StatReport {
            n: w.len(),
            w: w.clone(),
            area: area(w),
            dinv: dinv.total,
            dinv_profile: dinv.d,
            bounce: bounce.bounce,
            bounce_sequence: bounce.b,
            bounces: bounce.bounces,
        }
    }
}
