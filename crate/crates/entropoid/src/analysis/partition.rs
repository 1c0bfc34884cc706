use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use rayon::prelude::*;

use super::census::{pattern_rank, prefixes, Walker};
use super::entropy::{entropy_min, entropy_renyi, entropy_shannon, probabilities};
use crate::entropoid::{Element, EntropoidParams};
use crate::error::{Error, Result};
use crate::field::Residue;

/// Largest pattern space `partition_xi` will enumerate.
pub const PARTITION_LIMIT: u64 = 1 << 22;
/// Member pattern lists are kept only for censuses up to this size.
pub const MEMBER_PATTERN_LIMIT: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionClass<R> {
    pub representative: Element<R>,
    pub size: u64,
    /// Patterns in the class, in enumeration order, when the census is small.
    pub members: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug)]
pub struct PartitionReport<R> {
    pub base: u32,
    pub level: u32,
    /// Ordered by first occurrence, first pattern entry varying fastest.
    pub classes: Vec<PartitionClass<R>>,
    pub h1: f64,
    pub h2: f64,
    pub hmin: f64,
}

impl<R: Residue> PartitionReport<R> {
    pub fn r(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn total(&self) -> u64 {
        self.classes.iter().map(|c| c.size).sum()
    }

    pub fn max_size(&self) -> u64 {
        self.classes.iter().map(|c| c.size).max().unwrap_or(0)
    }

    pub fn min_size(&self) -> u64 {
        self.classes.iter().map(|c| c.size).min().unwrap_or(0)
    }

    /// Closed-form min-entropy candidate `1 - ((b-2)/(b-1))^(i-1)` for even
    /// bases, reported next to the measured value and never substituted for it.
    pub fn hmin_closed_form(&self) -> Option<f64> {
        if !self.base.is_multiple_of(2) || self.base < 4 {
            return None;
        }
        let r = (self.base - 2) as f64 / (self.base - 1) as f64;
        Some(1.0 - r.powi(self.level as i32 - 1))
    }

    pub const CSV_HEADER: &'static str = "base,i,r_i,n_ij,H1,H2,Hmin,Hmin_closed_form";

    pub fn csv_row(&self) -> String {
        let sizes: Vec<String> = self.sizes().iter().map(u64::to_string).collect();
        let mut row = format!(
            "{},{},{},{},{:.6},{:.6},{:.6},",
            self.base,
            self.level,
            self.r(),
            sizes.join(";"),
            self.h1,
            self.h2,
            self.hmin
        );
        if let Some(c) = self.hmin_closed_form() {
            let _ = write!(row, "{c:.6}");
        }
        row
    }
}

pub fn partitions_to_csv<R: Residue>(reports: &[PartitionReport<R>]) -> String {
    let mut out = String::from(PartitionReport::<R>::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

struct Bucket<R> {
    value: Element<R>,
    first: u64,
    size: u64,
    members: Vec<(u64, Vec<u32>)>,
}

/// Census of `g^(b^(i-1), pattern, b)` over every length-`i` pattern.
pub fn partition_xi<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>, base: u32, i: u32) -> Result<PartitionReport<R>> {
    if base < 2 || i == 0 {
        return Err(Error::InvalidIndex(format!("base {base}, level {i}")));
    }
    let radix = base - 1;
    let total = (radix as u64)
        .checked_pow(i)
        .filter(|&t| t <= PARTITION_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("{radix}^{i} patterns")))?;
    let keep = total <= MEMBER_PATTERN_LIMIT;
    let mut digits = vec![0u32; i as usize];
    digits[i as usize - 1] = 1;
    let walker = Walker::new(e, base, &digits);

    let split = (i as usize).min(2);
    let partials: Vec<HashMap<Element<R>, Bucket<R>>> = prefixes(radix, split)
        .par_iter()
        .map(|prefix| {
            let mut map: HashMap<Element<R>, Bucket<R>> = HashMap::new();
            let _ = walker.walk(g, prefix, &mut |pat, v| {
                let rank = pattern_rank(pat, radix);
                let b = map.entry(v.clone()).or_insert_with(|| Bucket {
                    value: v.clone(),
                    first: rank,
                    size: 0,
                    members: Vec::new(),
                });
                b.size += 1;
                b.first = b.first.min(rank);
                if keep {
                    b.members.push((rank, pat.to_vec()));
                }
                ControlFlow::Continue(())
            });
            map
        })
        .collect();

    let mut merged: HashMap<Element<R>, Bucket<R>> = HashMap::new();
    for part in partials {
        for (k, b) in part {
            match merged.get_mut(&k) {
                Some(m) => {
                    m.size += b.size;
                    m.first = m.first.min(b.first);
                    m.members.extend(b.members);
                }
                None => {
                    merged.insert(k, b);
                }
            }
        }
    }
    let mut buckets: Vec<Bucket<R>> = merged.into_values().collect();
    buckets.sort_by_key(|b| b.first);

    let classes: Vec<PartitionClass<R>> = buckets
        .into_iter()
        .map(|mut b| {
            b.members.sort_by_key(|(r, _)| *r);
            PartitionClass {
                representative: b.value,
                size: b.size,
                members: keep.then(|| b.members.into_iter().map(|(_, p)| p).collect()),
            }
        })
        .collect();
    debug_assert_eq!(classes.iter().map(|c| c.size).sum::<u64>(), total);

    let probs = probabilities(&classes.iter().map(|c| c.size).collect::<Vec<_>>());
    let h1 = entropy_shannon(&probs)?;
    let h2 = entropy_renyi(&probs, 2.0)?;
    let hmin = entropy_min(&probs)?;
    // Equal entropies can come out an ulp apart; the true values are ordered.
    let h2 = h2.min(h1);
    let hmin = hmin.min(h2);
    Ok(PartitionReport {
        base,
        level: i,
        classes,
        h1,
        h2,
        hmin,
    })
}

/// `(b-1)((b-1)^(i-1) - (b-2)^(i-1))`, the predicted largest class for an
/// even base.
pub fn conjecture3_predict(base: u32, i: u32) -> Result<u64> {
    if base < 4 || !base.is_multiple_of(2) || i == 0 {
        return Err(Error::InvalidIndex(format!("base {base}, level {i}")));
    }
    let b1 = (base - 1) as u64;
    let b2 = (base - 2) as u64;
    let hi = b1.checked_pow(i - 1).ok_or_else(|| Error::TooLarge(format!("{b1}^{}", i - 1)))?;
    let lo = b2.pow(i - 1);
    b1.checked_mul(hi - lo)
        .ok_or_else(|| Error::TooLarge(format!("prediction at base {base}, level {i}")))
}

/// Whether the census' largest class has the predicted size.
pub fn conjecture3_check<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>, base: u32, i: u32) -> Result<bool> {
    let predicted = conjecture3_predict(base, i)?;
    Ok(partition_xi(e, g, base, i)?.max_size() == predicted)
}
