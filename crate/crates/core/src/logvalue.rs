//! Signed numbers with an unbounded exponent.
//!
//! Weights, norms and polynomial values at indices of a few hundred overflow
//! `f64` long before the quantities we actually want (kernel entries,
//! densities) do. A [`LogValue`] carries the sign separately and stores the
//! magnitude as `m · 2^e` with `m ∈ [0.5, 1)` and a 64-bit exponent, so that
//! conversion to and from `f64` is exact and products never overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

const LN2_HI: f64 = 6.931_471_803_691_238_2e-1;
const LN2_LO: f64 = 1.908_214_929_270_587_7e-10;

/// Sign plus log-magnitude representation of a real number.
#[derive(Clone, Copy, PartialEq)]
pub struct LogValue {
    sign: i8,
    mant: f64,
    exp: i64,
}

fn pow2(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// `m · 2^e` without intermediate overflow; saturates to inf / 0.
fn ldexp(m: f64, e: i64) -> f64 {
    if e > 2100 {
        return m * f64::INFINITY;
    }
    if e < -2200 {
        return m * 0.0;
    }
    let mut m = m;
    let mut e = e;
    while e > 1023 {
        m *= pow2(1023);
        e -= 1023;
    }
    while e < -1022 {
        m *= pow2(-1022);
        e += 1022;
    }
    m * pow2(e)
}

/// Split a finite non-zero `|x|` into `m ∈ [0.5, 1)` and `e`.
fn frexp(x: f64) -> (f64, i64) {
    let mut x = x.abs();
    let mut bias = 0i64;
    if x < f64::MIN_POSITIVE {
        x *= pow2(64);
        bias = -64;
    }
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    let e = raw - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e + bias)
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: 0,
        mant: 0.0,
        exp: 0,
    };
    pub const ONE: LogValue = LogValue {
        sign: 1,
        mant: 0.5,
        exp: 1,
    };

    fn normalized(sign: i8, mant: f64, exp: i64) -> LogValue {
        if sign == 0 || mant == 0.0 {
            return LogValue::ZERO;
        }
        let (m, e) = frexp(mant);
        let sign = if mant < 0.0 { -sign } else { sign };
        LogValue {
            sign,
            mant: m,
            exp: exp + e,
        }
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(x: f64) -> LogValue {
        assert!(
            x.is_finite(),
            "LogValue::from_f64 requires a finite input, got {x}"
        );
        if x == 0.0 {
            return LogValue::ZERO;
        }
        let (m, e) = frexp(x);
        LogValue {
            sign: if x < 0.0 { -1 } else { 1 },
            mant: m,
            exp: e,
        }
    }

    /// The positive number `e^logmag`.
    pub fn from_ln(logmag: f64) -> LogValue {
        LogValue::from_sign_ln(1, logmag)
    }

    /// Build from a sign in {−1, 0, +1} and a natural-log magnitude.
    pub fn from_sign_ln(sign: i8, logmag: f64) -> LogValue {
        if sign == 0 || logmag == f64::NEG_INFINITY {
            return LogValue::ZERO;
        }
        assert!(logmag.is_finite(), "non-finite log magnitude {logmag}");
        let k = (logmag / std::f64::consts::LN_2).round();
        let r = (logmag - k * LN2_HI) - k * LN2_LO;
        LogValue::normalized(sign.signum(), r.exp(), k as i64)
    }

    /// Plain value; overflows to ±inf and underflows to zero.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        f64::from(self.sign) * ldexp(self.mant, self.exp)
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude (`-inf` for zero).
    pub fn logmag(self) -> f64 {
        if self.sign == 0 {
            return f64::NEG_INFINITY;
        }
        let e = (self.exp - 1) as f64;
        (2.0 * self.mant).ln() + e * LN2_HI + e * LN2_LO
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> LogValue {
        LogValue {
            sign: self.sign.abs(),
            ..self
        }
    }

    pub fn recip(self) -> LogValue {
        assert!(self.sign != 0, "reciprocal of zero LogValue");
        LogValue::normalized(self.sign, 1.0 / self.mant, -self.exp)
    }

    pub fn powi(self, n: i32) -> LogValue {
        if n == 0 {
            return LogValue::ONE;
        }
        if self.sign == 0 {
            return LogValue::ZERO;
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { 1 };
        LogValue::from_sign_ln(sign, f64::from(n) * self.logmag())
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(self, k: i64) -> LogValue {
        if self.sign == 0 {
            return self;
        }
        LogValue {
            exp: self.exp + k,
            ..self
        }
    }

    /// Signed sum, computed after factoring out the largest magnitude.
    pub fn sum<I: IntoIterator<Item = LogValue>>(terms: I) -> LogValue {
        let terms: Vec<LogValue> = terms.into_iter().filter(|v| v.sign != 0).collect();
        let Some(emax) = terms.iter().map(|v| v.exp).max() else {
            return LogValue::ZERO;
        };
        let acc: f64 = terms
            .iter()
            .map(|v| f64::from(v.sign) * ldexp(v.mant, v.exp - emax))
            .sum();
        LogValue::normalized(1, acc, emax)
    }

    pub fn add(self, other: LogValue) -> LogValue {
        LogValue::sum([self, other])
    }

    pub fn sub(self, other: LogValue) -> LogValue {
        LogValue::sum([self, -other])
    }

    /// Compare magnitudes.
    pub fn cmp_abs(&self, other: &LogValue) -> Ordering {
        match (self.sign == 0, other.sign == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(
                self.mant
                    .partial_cmp(&other.mant)
                    .unwrap_or(Ordering::Equal),
            ),
        }
    }
}

impl Default for LogValue {
    fn default() -> Self {
        LogValue::ZERO
    }
}

impl From<f64> for LogValue {
    fn from(x: f64) -> Self {
        LogValue::from_f64(x)
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 || rhs.sign == 0 {
            return LogValue::ZERO;
        }
        LogValue::normalized(
            self.sign * rhs.sign,
            self.mant * rhs.mant,
            self.exp + rhs.exp,
        )
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        self * rhs.recip()
    }
}

impl Neg for LogValue {
    type Output = LogValue;
    fn neg(self) -> LogValue {
        LogValue {
            sign: -self.sign,
            ..self
        }
    }
}

impl fmt::Debug for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "LogValue(0)"),
            s => write!(
                f,
                "LogValue({}exp({}))",
                if s < 0 { "-" } else { "+" },
                self.logmag()
            ),
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_f64();
        if v.is_finite() && (v == 0.0 || v.abs() > 1e-300) {
            write!(f, "{v}")
        } else {
            write!(
                f,
                "{}e^{}",
                if self.sign < 0 { "-" } else { "" },
                self.logmag()
            )
        }
    }
}
