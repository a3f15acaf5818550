//! Finite sets as index ranges and total functions as dense lookup tables.

use crate::error::{Error, Result};

/// A finite set `{0, .., size-1}` with optional presentation labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetObj {
    size: usize,
    labels: Option<Vec<String>>,
}

impl FinSetObj {
    pub fn new(size: usize) -> Self {
        FinSetObj { size, labels: None }
    }

    /// Labels must be pairwise distinct.
    pub fn labeled<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Parse(format!("duplicate element label {l:?}")));
            }
        }
        Ok(FinSetObj {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of element `i`, or its index rendered as a string.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// The subset picked out by `mask`, keeping labels of surviving elements.
    pub fn restrict(&self, mask: &[bool]) -> FinSetObj {
        debug_assert_eq!(mask.len(), self.size);
        match &self.labels {
            Some(ls) => FinSetObj {
                size: mask.iter().filter(|&&b| b).count(),
                labels: Some(
                    ls.iter()
                        .zip(mask)
                        .filter(|(_, &keep)| keep)
                        .map(|(l, _)| l.clone())
                        .collect(),
                ),
            },
            None => FinSetObj::new(mask.iter().filter(|&&b| b).count()),
        }
    }
}

/// A total function between finite sets, `table[i]` being the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinFn {
    target_size: usize,
    table: Vec<usize>,
}

impl FinFn {
    pub fn new(table: Vec<usize>, target_size: usize) -> Result<Self> {
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &t)| t >= target_size) {
            return Err(Error::OutOfRange {
                index,
                value,
                target_size,
            });
        }
        Ok(FinFn { target_size, table })
    }

    /// Skips the range check. Used by loaders that report every violation
    /// at once through [`crate::CoDecomposition::validate`].
    pub fn new_unchecked(table: Vec<usize>, target_size: usize) -> Self {
        FinFn { target_size, table }
    }

    pub fn identity(n: usize) -> Self {
        FinFn {
            target_size: n,
            table: (0..n).collect(),
        }
    }

    pub fn constant(source_size: usize, target_size: usize, value: usize) -> Result<Self> {
        Self::new(vec![value; source_size], target_size)
    }

    pub fn source_size(&self) -> usize {
        self.table.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(|&t| t < self.target_size)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FinFn) -> Result<FinFn> {
        compose(self, next)
    }

    /// Marks the elements of the target hit by the function.
    pub fn image(&self) -> Vec<bool> {
        image(self)
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(f: &FinFn, g: &FinFn) -> Result<FinFn> {
    if f.target_size != g.source_size() {
        return Err(Error::SizeMismatch {
            expected: f.target_size,
            found: g.source_size(),
        });
    }
    Ok(FinFn {
        target_size: g.target_size,
        table: f.table.iter().map(|&i| g.table[i]).collect(),
    })
}

pub fn image(f: &FinFn) -> Vec<bool> {
    let mut marked = vec![false; f.target_size];
    for &t in &f.table {
        marked[t] = true;
    }
    marked
}

/// Image of the masked part of the domain.
pub fn masked_image(f: &FinFn, domain_mask: &[bool]) -> Vec<bool> {
    let mut marked = vec![false; f.target_size];
    for (&t, &keep) in f.table.iter().zip(domain_mask) {
        if keep {
            marked[t] = true;
        }
    }
    marked
}
