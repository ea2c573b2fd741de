//! Roots of unity stored as rational exponents mod 1.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// `exp(2 pi i * num/den)` with `0 <= num < den`, `gcd(num, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalPhase {
    num: i64,
    den: i64,
}

impl RationalPhase {
    pub const ZERO: RationalPhase = RationalPhase { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = (num as i128, den as i128);
        if d < 0 {
            n = -n;
            d = -d;
        }
        n = n.rem_euclid(d);
        let g = n.gcd(&d);
        RationalPhase {
            num: (n / g) as i64,
            den: (d / g) as i64,
        }
    }

    pub fn half() -> Self {
        RationalPhase::new(1, 2)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn scale(&self, m: i64) -> Self {
        RationalPhase::new(
            ((self.num as i128 * m as i128).rem_euclid(self.den as i128)) as i64,
            self.den,
        )
    }

    /// Order of the root of unity.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `(cos, sin)` of `2 pi t`.
    pub fn to_complex(&self) -> (f64, f64) {
        let a = 2.0 * std::f64::consts::PI * self.to_f64();
        (a.cos(), a.sin())
    }

    /// Parses `"num/den"` or an integer.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let d: i64 = d.trim().parse().ok()?;
                if d == 0 {
                    return None;
                }
                Some(RationalPhase::new(n.trim().parse().ok()?, d))
            }
            None => Some(RationalPhase::new(s.parse().ok()?, 1)),
        }
    }
}

impl Default for RationalPhase {
    fn default() -> Self {
        RationalPhase::ZERO
    }
}

impl Add for RationalPhase {
    type Output = RationalPhase;
    fn add(self, o: RationalPhase) -> RationalPhase {
        let l = self.den.lcm(&o.den) as i128;
        let n = self.num as i128 * (l / self.den as i128) + o.num as i128 * (l / o.den as i128);
        RationalPhase::new((n % l) as i64, l as i64)
    }
}

impl Neg for RationalPhase {
    type Output = RationalPhase;
    fn neg(self) -> RationalPhase {
        RationalPhase::new(-self.num, self.den)
    }
}

impl Sub for RationalPhase {
    type Output = RationalPhase;
    fn sub(self, o: RationalPhase) -> RationalPhase {
        self + (-o)
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Sum of `m_i * t_i` reduced mod 1.
pub fn phase_combine(ops: &[(RationalPhase, i64)]) -> RationalPhase {
    ops.iter()
        .fold(RationalPhase::ZERO, |acc, (t, m)| acc + t.scale(*m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn combine_examples() {
        let third = RationalPhase::new(1, 3);
        assert_eq!(phase_combine(&[(third, 1), (third, 2)]), RationalPhase::ZERO);
        assert_eq!(phase_combine(&[(RationalPhase::new(5, 4), 1)]), RationalPhase::new(1, 4));
        let (j, r) = (1, 2);
        assert_eq!(
            phase_combine(&[(RationalPhase::new(j * j * r, 2 * r + 1), 1)]),
            RationalPhase::new(2, 5)
        );
    }

    #[test]
    fn normalization() {
        let p = RationalPhase::new(-3, 6);
        assert_eq!((p.num(), p.den()), (1, 2));
        assert_eq!(RationalPhase::new(7, -7), RationalPhase::ZERO);
        assert_eq!(RationalPhase::parse("5/4"), Some(RationalPhase::new(1, 4)));
        assert_eq!(RationalPhase::new(3, 8).to_string(), "3/8");
    }

    fn arb_phase() -> impl Strategy<Value = RationalPhase> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| RationalPhase::new(n, d))
    }

    proptest! {
        #[test]
        fn commutes_and_associates(a in arb_phase(), b in arb_phase(), c in arb_phase()) {
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!(a - a, RationalPhase::ZERO);
        }

        #[test]
        fn n_copies_of_one_over_n(n in 1i64..500) {
            prop_assert_eq!(phase_combine(&[(RationalPhase::new(1, n), n)]), RationalPhase::ZERO);
        }

        #[test]
        fn normalized(a in arb_phase()) {
            prop_assert!(a.num() >= 0 && a.num() < a.den());
            prop_assert_eq!(a.num().gcd(&a.den()), 1);
        }
    }
}
