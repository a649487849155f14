//! Exact fractions over i128 with checked arithmetic.
//!
//! The oracle's linear systems involve node parameters no larger than small
//! single digits and polynomial degrees below 15, so i128 numerators never
//! approach overflow; checked operations turn any surprise into a loud panic
//! instead of a wrong rank.

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    num: i128,
    den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Frac {
    pub const ZERO: Frac = Frac { num: 0, den: 1 };
    pub const ONE: Frac = Frac { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Frac {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Frac { num: sign * num / g, den: sign * den / g }
    }

    pub fn from_int(n: i64) -> Frac {
        Frac { num: n as i128, den: 1 }
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn add(self, other: Frac) -> Frac {
        let num = self
            .num
            .checked_mul(other.den)
            .and_then(|x| other.num.checked_mul(self.den).and_then(|y| x.checked_add(y)))
            .expect("fraction overflow");
        Frac::new(num, self.den.checked_mul(other.den).expect("fraction overflow"))
    }

    pub fn neg(self) -> Frac {
        Frac { num: -self.num, den: self.den }
    }

    pub fn sub(self, other: Frac) -> Frac {
        self.add(other.neg())
    }

    pub fn mul(self, other: Frac) -> Frac {
        let num = self.num.checked_mul(other.num).expect("fraction overflow");
        let den = self.den.checked_mul(other.den).expect("fraction overflow");
        Frac::new(num, den)
    }

    pub fn div(self, other: Frac) -> Frac {
        assert!(!other.is_zero(), "division by zero fraction");
        self.mul(Frac { num: other.den, den: other.num })
    }

    /// Integer power with checked arithmetic.
    pub fn pow(self, exp: u32) -> Frac {
        let mut out = Frac::ONE;
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }
}

/// Rank of a matrix given as rows, by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Frac>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col];
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].div(inv);
            for c in col..cols {
                let sub = rows[rank][c].mul(factor);
                rows[r][c] = rows[r][c].sub(sub);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
