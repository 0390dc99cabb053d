//! The join operator and the structural predicates built on it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pattern::{Color, Pattern};

/// `p ⊎ q`: the last vertex of `p` is identified with the first vertex of `q`,
/// and every pair `(x, y)` with `x` strictly inside `p` and `y` strictly inside
/// `q` takes the color `p(x, |p|−1)`.
pub fn join(p: &Pattern, q: &Pattern) -> Pattern {
    let seam = p.size() - 1;
    Pattern::from_fn(p.size() + q.size() - 1, |x, y| {
        if y <= seam {
            p.get(x, y)
        } else if x >= seam {
            q.get(x - seam, y - seam)
        } else {
            p.get(x, seam)
        }
    })
}

/// Every `(a, b)` with `|a|, |b| ≥ 2` and `a ⊎ b = p`, by increasing split point.
pub fn decompositions(p: &Pattern) -> Vec<(Pattern, Pattern)> {
    let n = p.size();
    let mut out = Vec::new();
    for k in 2..n {
        let left: Vec<usize> = (0..k).collect();
        let right: Vec<usize> = (k - 1..n).collect();
        let a = p.relabel(&left);
        let b = p.relabel(&right);
        if join(&a, &b) == *p {
            out.push((a, b));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum IrreducibilityMethod {
    /// No decomposition exists.
    #[default]
    Definitional,
    /// Every split `[0,k) | [k,ℓ)` with `1 ≤ k ≤ ℓ−2` has some `x` on the left
    /// seeing two colors on the right.
    Criterion,
}

impl FromStr for IrreducibilityMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "definitional" => Ok(Self::Definitional),
            "criterion" => Ok(Self::Criterion),
            other => Err(Error::Precondition(format!(
                "unknown irreducibility method `{other}`"
            ))),
        }
    }
}

pub fn is_irreducible(p: &Pattern, method: IrreducibilityMethod) -> bool {
    match method {
        IrreducibilityMethod::Definitional => decompositions(p).is_empty(),
        IrreducibilityMethod::Criterion => {
            let n = p.size();
            (1..n.saturating_sub(1))
                .all(|k| (0..k).any(|x| (k + 1..n).any(|y| p.get(x, y) != p.get(x, k))))
        }
    }
}

/// The last column `p(·, ℓ−1)` takes both colors.
pub fn is_divergent(p: &Pattern) -> bool {
    let col = if p.size() >= 2 {
        p.last_column()
    } else {
        Vec::new()
    };
    col.windows(2).any(|w| w[0] != w[1])
}

pub fn is_convergent(p: &Pattern) -> bool {
    !is_divergent(p)
}

/// Every split `F = [0,k)`, `G = [k,ℓ−1)` with both sides nonempty satisfies
/// one of: some `x ∈ F` has last-column color `1−i`; some `x ∈ G` has
/// last-column color `i`; `F × G` is not monochromatic.
pub fn is_i_merging(p: &Pattern, i: Color) -> bool {
    let n = p.size();
    if n <= 2 {
        return true;
    }
    let last = n - 1;
    (1..last).all(|k| {
        (0..k).any(|x| p.get(x, last) == 1 - i) || (k..last).any(|x| p.get(x, last) == i) || {
            let c = p.get(0, k);
            (0..k).any(|x| (k..last).any(|y| p.get(x, y) != c))
        }
    })
}

pub fn is_merging(p: &Pattern) -> bool {
    is_i_merging(p, 0) && is_i_merging(p, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassificationFlags {
    pub divergent: bool,
    pub convergent: bool,
    pub irreducible: bool,
    pub reducible: bool,
    pub merging0: bool,
    pub merging1: bool,
    pub merging: bool,
}

impl ClassificationFlags {
    pub fn new(divergent: bool, irreducible: bool, merging0: bool, merging1: bool) -> Self {
        ClassificationFlags {
            divergent,
            convergent: !divergent,
            irreducible,
            reducible: !irreducible,
            merging0,
            merging1,
            merging: merging0 && merging1,
        }
    }

    /// Divergent and irreducible.
    pub fn div_irr(&self) -> bool {
        self.divergent && self.irreducible
    }

    pub fn merging_for(&self, i: Color) -> bool {
        if i == 0 {
            self.merging0
        } else {
            self.merging1
        }
    }

    /// Compact bit form: divergent, irreducible, merging0, merging1.
    pub fn bits(&self) -> u8 {
        u8::from(self.divergent)
            | u8::from(self.irreducible) << 1
            | u8::from(self.merging0) << 2
            | u8::from(self.merging1) << 3
    }

    pub fn from_bits(bits: u8) -> Self {
        Self::new(bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0)
    }
}

impl fmt::Display for ClassificationFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} merging0={} merging1={}",
            if self.divergent {
                "divergent"
            } else {
                "convergent"
            },
            if self.irreducible {
                "irreducible"
            } else {
                "reducible"
            },
            yes_no(self.merging0),
            yes_no(self.merging1)
        )
    }
}

pub(crate) fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn classify(p: &Pattern) -> ClassificationFlags {
    ClassificationFlags::new(
        is_divergent(p),
        is_irreducible(p, IrreducibilityMethod::Criterion),
        is_i_merging(p, 0),
        is_i_merging(p, 1),
    )
}
