//! Independent reference computations for tests. Deliberately naive: plain
//! integer arithmetic, inverses by exhaustive search, shapes as explicit trees.

#![allow(dead_code)]

use entropoid::powindex::ShapeTree;
use entropoid::PowerIndex;

pub fn inv_search(a: u64, p: u64) -> u64 {
    (1..p).find(|b| (a % p) * b % p == 1).expect("invertible")
}

/// The star product written straight from the defining formula, with every
/// fraction resolved by search.
#[derive(Clone, Copy, Debug)]
pub struct NaiveStar {
    pub p: u64,
    pub a3: u64,
    pub a8: u64,
    pub b2: u64,
    pub b7: u64,
}

impl NaiveStar {
    pub fn new(p: u64, a3: u64, a8: u64, b2: u64, b7: u64) -> Self {
        NaiveStar { p, a3, a8, b2, b7 }
    }

    fn frac(&self, num: i128, den: i128) -> u64 {
        let p = self.p as i128;
        let n = num.rem_euclid(p) as u64;
        let d = den.rem_euclid(p) as u64;
        n * inv_search(d, self.p) % self.p
    }

    pub fn star(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        let p = self.p as i128;
        let (a3, a8, b2, b7) = (self.a3 as i128, self.a8 as i128, self.b2 as i128, self.b7 as i128);
        let (x1, x2, y1, y2) = (x.0 as i128, x.1 as i128, y.0 as i128, y.1 as i128);
        let first = self.frac(a3 * (a8 * b2 - b7), a8 * b7) as i128
            + a3 * x2
            + self.frac(a8 * b2 * y1, b7) as i128
            + a8 * x2 * y1;
        let second = -(self.frac(b2 * (a8 - a3 * b7), a8 * b7) as i128)
            + self.frac(a3 * b7 * y2, a8) as i128
            + b2 * x1
            + b7 * x1 * y2;
        (first.rem_euclid(p) as u64, second.rem_euclid(p) as u64)
    }

    pub fn zero(&self) -> (u64, u64) {
        let p = self.p as i128;
        (
            (-(self.frac(self.a3 as i128, self.a8 as i128) as i128)).rem_euclid(p) as u64,
            (-(self.frac(self.b2 as i128, self.b7 as i128) as i128)).rem_euclid(p) as u64,
        )
    }

    /// Left unit located by search over G.
    pub fn left_unit(&self) -> (u64, u64) {
        let probe = [(1, 2), (3, 5 % self.p), (self.p - 1, 1)];
        (0..self.p)
            .flat_map(|i| (0..self.p).map(move |j| (i, j)))
            .find(|&e| probe.iter().all(|&x| self.star(e, x) == x))
            .expect("left unit exists")
    }

    pub fn eval(&self, t: &ShapeTree, x: (u64, u64)) -> (u64, u64) {
        match t {
            ShapeTree::Leaf => x,
            ShapeTree::Node(l, r) => self.star(self.eval(l, x), self.eval(r, x)),
        }
    }
}

/// Right-nested product of `n` leaves.
pub fn right_nested(n: usize) -> ShapeTree {
    let mut t = ShapeTree::Leaf;
    for _ in 1..n {
        t = ShapeTree::node(ShapeTree::Leaf, t);
    }
    t
}

/// Shape of the `j`-th class representative for `a` leaves, built from the
/// recurrence rather than the closed form: start with `x*x`, then each step
/// prefixes every entry with `x*` and appends `first * x`.
pub fn rep_shape(a: usize, j: usize) -> ShapeTree {
    let mut reps = vec![ShapeTree::node(ShapeTree::Leaf, ShapeTree::Leaf)];
    for _ in 3..=a {
        let tail = ShapeTree::node(reps[0].clone(), ShapeTree::Leaf);
        reps = reps
            .into_iter()
            .map(|r| ShapeTree::node(ShapeTree::Leaf, r))
            .collect();
        reps.push(tail);
    }
    reps.swap_remove(j)
}

/// Substitutes `inner` for every leaf of `outer`.
pub fn compose(outer: &ShapeTree, inner: &ShapeTree) -> ShapeTree {
    match outer {
        ShapeTree::Leaf => inner.clone(),
        ShapeTree::Node(l, r) => ShapeTree::node(compose(l, inner), compose(r, inner)),
    }
}

/// Unfolds the exponentiation ladder into the bracketing it evaluates.
pub fn unfold(idx: &PowerIndex) -> ShapeTree {
    let b = idx.base() as usize;
    let digits = idx.digits();
    let pattern = idx.pattern();
    let mut w = ShapeTree::Leaf;
    let mut acc: Option<ShapeTree> = None;
    for i in 0..digits.len() {
        if i > 0 {
            w = compose(&rep_shape(b, pattern[i] as usize), &w);
        }
        let ai = digits[i] as usize;
        if ai == 0 {
            continue;
        }
        let r = if ai == 1 {
            w.clone()
        } else {
            compose(&rep_shape(ai, pattern[i] as usize % (ai - 1)), &w)
        };
        acc = Some(match acc {
            None => r,
            Some(prev) if pattern[i - 1].is_multiple_of(2) => ShapeTree::node(r, prev),
            Some(prev) => ShapeTree::node(prev, r),
        });
    }
    acc.expect("nonzero index")
}

pub fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}


/// Fixed safe primes of exact bit width, produced once by a seeded search.
pub fn safe_prime(bits: u32) -> num_bigint::BigUint {
    let s = match bits {
        16 => "56003",
        20 => "917459",
        24 => "12665207",
        32 => "2484057299",
        64 => "13819042697851660547",
        128 => "330408645472524569317013323017805641587",
        192 => "6256656429826986302736153786247414505998506536719328895407",
        256 => "73490789000524457417588458438521775325371729756998283267186923781319634049883",
        384 => "31555393035562347142469492830223550306608376695109754388237578962963182514769289236586177897414940818066665819751087",
        512 => "8044139426876601025376862859232072281897820454102049073420758521472256610140196601915085901883436314465517846254155637877344022111168707425990446355023063",
        _ => panic!("no fixed safe prime with {bits} bits"),
    };
    s.parse().expect("decimal literal")
}
