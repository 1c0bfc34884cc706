use std::collections::HashMap;

use super::representatives;
use super::shape::{enumerate_shapes, pow_oracle, ShapeTree};
use crate::entropoid::{Element, EntropoidParams};
use crate::error::{Error, Result};
use crate::field::Residue;

pub const SHAPE_CLASS_LIMIT: u32 = 14;
pub const MEMBER_LIST_LIMIT: u32 = 10;

#[derive(Clone, Debug)]
pub struct ShapeClass<R> {
    pub value: Element<R>,
    /// Index into `R_a(g)` of the first representative with this value.
    pub representative: Option<usize>,
    pub size: u64,
    pub members: Option<Vec<ShapeTree>>,
}

/// Census of the values taken by all bracketings of `a` copies of `g`.
#[derive(Clone, Debug)]
pub struct ShapeClasses<R> {
    pub a: u32,
    pub classes: Vec<ShapeClass<R>>,
}

impl<R> ShapeClasses<R> {
    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn total(&self) -> u64 {
        self.classes.iter().map(|c| c.size).sum()
    }
}

/// Counts shapes per value by splitting at the root: a tree with `n` leaves
/// is a product of trees with `l` and `n - l` leaves.
fn value_counts<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>, a: usize) -> HashMap<Element<R>, u64> {
    let mut by_size: Vec<HashMap<Element<R>, u64>> = vec![HashMap::new(), HashMap::from([(g.clone(), 1)])];
    for n in 2..=a {
        let mut level: HashMap<Element<R>, u64> = HashMap::new();
        for l in 1..n {
            for (u, cu) in &by_size[l] {
                for (v, cv) in &by_size[n - l] {
                    *level.entry(e.star(u, v)).or_default() += cu * cv;
                }
            }
        }
        by_size.push(level);
    }
    by_size.swap_remove(a)
}

pub fn equivalence_classes<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>, a: u32) -> Result<ShapeClasses<R>> {
    if a < 2 {
        return Err(Error::InvalidIndex(format!("a = {a} < 2")));
    }
    if a > SHAPE_CLASS_LIMIT {
        return Err(Error::TooLarge(format!("a = {a} > {SHAPE_CLASS_LIMIT}")));
    }
    let reps = representatives(e, g, a)?;
    let mut counts = value_counts(e, g, a as usize);

    let mut classes: Vec<ShapeClass<R>> = Vec::new();
    for (j, r) in reps.iter().enumerate() {
        if let Some(size) = counts.remove(r) {
            classes.push(ShapeClass {
                value: r.clone(),
                representative: Some(j),
                size,
                members: None,
            });
        }
    }
    let mut rest: Vec<_> = counts.into_iter().collect();
    rest.sort();
    classes.extend(rest.into_iter().map(|(value, size)| ShapeClass {
        value,
        representative: None,
        size,
        members: None,
    }));

    if a <= MEMBER_LIST_LIMIT {
        for c in classes.iter_mut() {
            c.members = Some(Vec::new());
        }
        for tree in enumerate_shapes(a as usize) {
            let v = pow_oracle(e, g, &tree);
            let c = classes
                .iter_mut()
                .find(|c| c.value == v)
                .expect("every shape value was counted");
            c.members.as_mut().expect("allocated above").push(tree);
        }
    }
    Ok(ShapeClasses { a, classes })
}
