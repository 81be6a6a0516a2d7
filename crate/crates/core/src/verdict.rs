use std::fmt;

/// Outcome of a universally quantified check.
///
/// `window_certified` is set when the quantifier was only scanned on a finite
/// window; such verdicts say nothing about degrees outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub window_certified: bool,
    pub witness: Option<Vec<i64>>,
    pub detail: Option<String>,
}

impl Verdict {
    pub fn exact(holds: bool) -> Self {
        Verdict {
            holds,
            window_certified: false,
            witness: None,
            detail: None,
        }
    }

    pub fn pass(window_certified: bool) -> Self {
        Verdict {
            holds: true,
            window_certified,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(window_certified: bool, witness: Vec<i64>, detail: impl Into<String>) -> Self {
        Verdict {
            holds: false,
            window_certified,
            witness: Some(witness),
            detail: Some(detail.into()),
        }
    }

    /// Both must hold; the first failure wins.
    pub fn and(self, other: Verdict) -> Verdict {
        let certified = self.window_certified || other.window_certified;
        let mut out = if !self.holds { self } else { other };
        out.window_certified = certified;
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "holds={}", self.holds)?;
        if self.window_certified {
            write!(f, " (window-certified)")?;
        }
        if let Some(w) = &self.witness {
            let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            write!(f, " witness=({})", w.join(","))?;
        }
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}
