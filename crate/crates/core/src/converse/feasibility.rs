use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

pub const SOFT_PARITY: &str = "n = 2 mod 4 only for n = 2";
pub const TWO_SQUARES: &str = "Bruck-Ryser two squares";
pub const NORMAL_M_PARITY: &str = "n odd or a power of 2 (when M is normal)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub filter: &'static str,
    pub feasible: bool,
    /// Only binding for searches that assume `M ◁ G`.
    pub conditional: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderFeasibility {
    pub n: u64,
    pub verdicts: Vec<Verdict>,
}

impl OrderFeasibility {
    /// Passes every unconditional filter.
    pub fn feasible(&self) -> bool {
        self.verdicts.iter().filter(|v| !v.conditional).all(|v| v.feasible)
    }

    pub fn feasible_with_normal_m(&self) -> bool {
        self.verdicts.iter().all(|v| v.feasible)
    }

    pub fn rejections(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.conditional && !v.feasible)
    }
}

impl fmt::Display for OrderFeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}: {}", self.n, if self.feasible() { "feasible" } else { "infeasible" })?;
        for v in &self.verdicts {
            writeln!(
                f,
                "  {}{}: {} ({})",
                v.filter,
                if v.conditional { " [conditional]" } else { "" },
                if v.feasible { "pass" } else { "REJECT" },
                v.reason
            )?;
        }
        Ok(())
    }
}

/// `n = a² + b²` with `a ≤ b`, by exhaustive scan.
pub fn two_squares(n: u64) -> Option<(u64, u64)> {
    let mut a = 0;
    while 2 * a * a <= n {
        let rest = n - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            return Some((a, b));
        }
        a += 1;
    }
    None
}

/// Arithmetic filters on the order of a soft plane.
pub fn order_feasibility(n: u64) -> Result<OrderFeasibility> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("plane order {n} < 2")));
    }
    let mut verdicts = Vec::with_capacity(3);
    let r = n % 4;
    verdicts.push(if r == 2 && n != 2 {
        Verdict {
            filter: SOFT_PARITY,
            feasible: false,
            conditional: false,
            reason: format!("{n} = 2 mod 4 and n != 2"),
        }
    } else {
        Verdict {
            filter: SOFT_PARITY,
            feasible: true,
            conditional: false,
            reason: format!("{n} = {r} mod 4"),
        }
    });
    verdicts.push(if r == 1 || r == 2 {
        match two_squares(n) {
            Some((a, b)) => Verdict {
                filter: TWO_SQUARES,
                feasible: true,
                conditional: false,
                reason: format!("{n} = {a}^2 + {b}^2"),
            },
            None => Verdict {
                filter: TWO_SQUARES,
                feasible: false,
                conditional: false,
                reason: format!("{n} = {r} mod 4 is not a sum of two squares"),
            },
        }
    } else {
        Verdict {
            filter: TWO_SQUARES,
            feasible: true,
            conditional: false,
            reason: format!("{n} = {r} mod 4, filter does not apply"),
        }
    });
    let ok = n % 2 == 1 || n.is_power_of_two();
    verdicts.push(Verdict {
        filter: NORMAL_M_PARITY,
        feasible: ok,
        conditional: true,
        reason: if ok {
            format!("n^3 = {} is odd or a power of 2", n.pow(3))
        } else {
            format!("{n} is even but not a power of 2")
        },
    });
    Ok(OrderFeasibility { n, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_square_witnesses() {
        assert_eq!(two_squares(25), Some((0, 5)));
        assert_eq!(two_squares(10), Some((1, 3)));
        assert_eq!(two_squares(21), None);
        assert_eq!(two_squares(0), Some((0, 0)));
    }

    #[test]
    fn rejects_below_two() {
        assert!(order_feasibility(1).is_err());
    }

    #[test]
    fn twelve_is_conditional_only() {
        let f = order_feasibility(12).unwrap();
        assert!(f.feasible());
        assert!(!f.feasible_with_normal_m());
    }
}
