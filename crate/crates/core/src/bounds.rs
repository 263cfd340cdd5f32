//! Profile-driven bound functions.
//!
//! The PAPER profile pins every bound to the asymptotic forms (⌊log2 n⌋
//! sizes, n^⌈log2 n⌉ guard); the DESK profile relaxes them so that
//! exhaustive verification is affordable. Bounds are first-class values so
//! reports can echo them by name.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Paper,
    Desk,
}

/// A named monotone bound n ↦ usize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "fn", content = "arg")]
#[serde(rename_all = "snake_case")]
pub enum BoundFn {
    /// ⌊log2 n⌋ (0 at n = 0).
    Log2Floor,
    Const(usize),
    /// ⌊log2 n⌋ + a constant slack.
    Log2Plus(usize),
}

impl BoundFn {
    pub fn eval(self, n: usize) -> usize {
        match self {
            BoundFn::Log2Floor => log2_floor(n),
            BoundFn::Const(c) => c,
            BoundFn::Log2Plus(c) => log2_floor(n) + c,
        }
    }
}

pub fn log2_floor(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (usize::BITS - 1 - n.leading_zeros()) as usize
    }
}

/// n^⌈log2 n⌉ with saturation; the PAPER-profile translation guard.
pub fn n_pow_ceil_log2(n: usize) -> u64 {
    if n <= 1 {
        return 1;
    }
    let exp = log2_floor(n) + usize::from(!n.is_power_of_two());
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(n as u64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_floor_values() {
        assert_eq!(log2_floor(1), 0);
        assert_eq!(log2_floor(2), 1);
        assert_eq!(log2_floor(3), 1);
        assert_eq!(log2_floor(8), 3);
        assert_eq!(log2_floor(9), 3);
    }

    #[test]
    fn guard_values() {
        assert_eq!(n_pow_ceil_log2(1), 1);
        assert_eq!(n_pow_ceil_log2(2), 2);
        assert_eq!(n_pow_ceil_log2(4), 16);
        assert_eq!(n_pow_ceil_log2(5), 125);
        assert_eq!(n_pow_ceil_log2(8), 512);
    }

    #[test]
    fn bounds_monotone() {
        for f in [BoundFn::Log2Floor, BoundFn::Const(8), BoundFn::Log2Plus(4)] {
            for n in 1..512 {
                assert!(f.eval(n) <= f.eval(n + 1));
            }
        }
    }
}
