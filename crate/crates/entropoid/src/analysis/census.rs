//! Exhaustive walks over the bracketing patterns of a fixed integer part.
//!
//! Patterns that share a prefix share the ladder state up to that prefix, so
//! a depth-first walk costs far less than one exponentiation per pattern.
//! The state transitions are the same ones the ladder performs, which the
//! tests confirm against `pow_fast` pattern by pattern.

use std::ops::ControlFlow;

use crate::entropoid::{Element, EntropoidParams};
use crate::field::Residue;
use crate::powindex::representative_with;

#[derive(Clone)]
struct State<R> {
    w: Element<R>,
    acc: Option<Element<R>>,
}

pub(crate) struct Walker<'a, R: Residue> {
    e: &'a EntropoidParams<R>,
    base: u32,
    digits: &'a [u32],
}

impl<'a, R: Residue> Walker<'a, R> {
    pub(crate) fn new(e: &'a EntropoidParams<R>, base: u32, digits: &'a [u32]) -> Self {
        Walker { e, base, digits }
    }

    fn step(&self, st: &State<R>, pos: usize, pj: u32, prev: Option<u32>) -> State<R> {
        let e = self.e;
        let mut mul = |u: &Element<R>, v: &Element<R>| e.star(u, v);
        let w = if pos == 0 {
            st.w.clone()
        } else {
            representative_with(&st.w, self.base, pj, &mut mul)
        };
        let d = self.digits[pos];
        if d == 0 {
            return State { w, acc: st.acc.clone() };
        }
        let r = if d == 1 {
            w.clone()
        } else {
            representative_with(&w, d, pj % (d - 1), &mut mul)
        };
        let acc = Some(match (&st.acc, prev) {
            (Some(a), Some(pp)) if pp % 2 == 0 => e.star(&r, a),
            (Some(a), Some(_)) => e.star(a, &r),
            _ => r,
        });
        State { w, acc }
    }

    /// Visits every pattern that starts with `prefix`, in lexicographic order
    /// of the remaining positions.
    pub(crate) fn walk<F>(&self, x: &Element<R>, prefix: &[u32], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32], &Element<R>) -> ControlFlow<()>,
    {
        let mut st = State { w: x.clone(), acc: None };
        let mut pattern = Vec::with_capacity(self.digits.len());
        for (pos, &pj) in prefix.iter().enumerate() {
            st = self.step(&st, pos, pj, pattern.last().copied());
            pattern.push(pj);
        }
        self.rec(&st, &mut pattern, visit)
    }

    fn rec<F>(&self, st: &State<R>, pattern: &mut Vec<u32>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32], &Element<R>) -> ControlFlow<()>,
    {
        let pos = pattern.len();
        if pos == self.digits.len() {
            return visit(pattern, st.acc.as_ref().expect("leading digit is nonzero"));
        }
        for pj in 0..=self.base - 2 {
            let next = self.step(st, pos, pj, pattern.last().copied());
            pattern.push(pj);
            let flow = self.rec(&next, pattern, visit);
            pattern.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// All digit lists of length `len` over `0..radix`, first position fastest.
pub(crate) fn prefixes(radix: u32, len: usize) -> Vec<Vec<u32>> {
    let count = (radix as usize).pow(len as u32);
    (0..count)
        .map(|mut n| {
            (0..len)
                .map(|_| {
                    let d = (n % radix as usize) as u32;
                    n /= radix as usize;
                    d
                })
                .collect()
        })
        .collect()
}

/// Position of a pattern in the enumeration order with the first entry
/// varying fastest.
pub(crate) fn pattern_rank(pattern: &[u32], radix: u32) -> u64 {
    pattern
        .iter()
        .rev()
        .fold(0u64, |acc, &d| acc * radix as u64 + d as u64)
}
