use std::fmt;

use crate::entropoid::{Element, EntropoidParams};
use crate::field::Residue;

/// Full binary tree whose leaves all stand for the same factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ShapeTree {
    Leaf,
    Node(Box<ShapeTree>, Box<ShapeTree>),
}

impl ShapeTree {
    pub fn node(l: ShapeTree, r: ShapeTree) -> ShapeTree {
        ShapeTree::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            ShapeTree::Leaf => 1,
            ShapeTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            ShapeTree::Leaf => 0,
            ShapeTree::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    /// `((x*x)*x)*..`: each new factor enters on the right.
    pub fn left_comb(a: usize) -> ShapeTree {
        (1..a).fold(ShapeTree::Leaf, |t, _| ShapeTree::node(t, ShapeTree::Leaf))
    }

    /// `x*(x*(..*x))`.
    pub fn right_comb(a: usize) -> ShapeTree {
        (1..a).fold(ShapeTree::Leaf, |t, _| ShapeTree::node(ShapeTree::Leaf, t))
    }

    /// Evaluates with any product.
    pub fn eval<T: Clone, F: FnMut(&T, &T) -> T>(&self, x: &T, mul: &mut F) -> T {
        match self {
            ShapeTree::Leaf => x.clone(),
            ShapeTree::Node(l, r) => {
                let lv = l.eval(x, mul);
                let rv = r.eval(x, mul);
                mul(&lv, &rv)
            }
        }
    }
}

impl fmt::Display for ShapeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeTree::Leaf => write!(f, "x"),
            ShapeTree::Node(l, r) => write!(f, "({l}*{r})"),
        }
    }
}

/// Evaluates a bracketing of `tree.leaves()` copies of `x`.
pub fn pow_oracle<R: Residue>(e: &EntropoidParams<R>, x: &Element<R>, tree: &ShapeTree) -> Element<R> {
    assert!(tree.leaves() <= 1 << 14, "oracle tree too large");
    tree.eval(x, &mut |u, v| e.star(u, v))
}

/// All `C_{a-1}` trees with `a` leaves, in a fixed order.
pub fn enumerate_shapes(a: usize) -> Vec<ShapeTree> {
    assert!(a >= 1);
    let mut by_size: Vec<Vec<ShapeTree>> = vec![Vec::new(), vec![ShapeTree::Leaf]];
    for n in 2..=a {
        let mut level = Vec::new();
        for l in 1..n {
            for lt in &by_size[l] {
                for rt in &by_size[n - l] {
                    level.push(ShapeTree::node(lt.clone(), rt.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.swap_remove(a)
}
