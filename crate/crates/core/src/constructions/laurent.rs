//! Finite quotients `ℤ_n[t, t⁻¹]/(h(t))` used for Alexander quandles.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("polynomial is zero modulo {0}")]
    ZeroPolynomial(u64),
    #[error("coefficient {coefficient} of t^{degree} is not a unit modulo {modulus}")]
    NonUnit { coefficient: i64, degree: usize, modulus: u64 },
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("quotient has too many elements")]
    TooLarge,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

/// `ℤ_n[t, t⁻¹]/(h)`. Elements are residues `a_0 + a_1 t + … + a_{d-1} t^{d-1}`
/// with `d = deg h`, encoded as the base-`n` integer `a_0 + a_1 n + …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentQuotient {
    modulus: u64,
    /// monic reduction data: `t^d = -(c_0 + … + c_{d-1} t^{d-1}) / c_d`
    reduction: Vec<u64>,
    degree: usize,
    size: usize,
    times_t: Vec<usize>,
    times_one_minus_t: Vec<usize>,
}

impl LaurentQuotient {
    /// `h` lists coefficients from the lowest power upwards. Zero
    /// coefficients at either end are stripped (a power of `t` is a unit);
    /// the remaining outer coefficients must be units modulo `n`.
    pub fn new(modulus: u64, h: &[i64]) -> Result<Self, LaurentError> {
        if modulus == 0 {
            return Err(LaurentError::ZeroModulus);
        }
        let reduced: Vec<u64> = h.iter().map(|&c| c.rem_euclid(modulus as i64) as u64).collect();
        let lo = reduced.iter().position(|&c| c != 0);
        let hi = reduced.iter().rposition(|&c| c != 0);
        let (lo, hi) = match (lo, hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ if modulus == 1 => (0, 0),
            _ => return Err(LaurentError::ZeroPolynomial(modulus)),
        };
        let coeffs: Vec<u64> = if modulus == 1 { vec![0] } else { reduced[lo..=hi].to_vec() };
        let degree = coeffs.len() - 1;
        if modulus > 1 {
            for (deg, c) in [(0usize, coeffs[0]), (degree, coeffs[degree])] {
                if gcd(c, modulus) != 1 {
                    return Err(LaurentError::NonUnit { coefficient: h[lo + deg], degree: lo + deg, modulus });
                }
            }
        }
        let size = (modulus as usize).checked_pow(degree as u32).filter(|&s| s <= 1 << 24).ok_or(LaurentError::TooLarge)?;
        let lead_inv = if modulus == 1 { 0 } else { inverse_mod(coeffs[degree], modulus).expect("unit") };
        let reduction = coeffs[..degree]
            .iter()
            .map(|&c| (modulus - (c * lead_inv) % modulus) % modulus)
            .collect();
        let mut q = LaurentQuotient {
            modulus,
            reduction,
            degree,
            size,
            times_t: Vec::new(),
            times_one_minus_t: Vec::new(),
        };
        q.times_t = (0..size).map(|e| q.encode(&q.shift(&q.decode(e)))).collect();
        q.times_one_minus_t = (0..size).map(|e| q.sub(e, q.times_t[e])).collect();
        Ok(q)
    }

    /// Parses `t^2+t+1`, `2t-1`, `1 + 3*t^2` and similar, or a comma
    /// separated coefficient list `1,1,1` (lowest power first).
    pub fn parse_polynomial(text: &str) -> Result<Vec<i64>, LaurentError> {
        let err = || LaurentError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        if !s.contains('t') {
            return s.split(',').map(|c| c.parse::<i64>().map_err(|_| err())).collect();
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let (coef, power) = match body.find('t') {
                None => (body.parse::<i64>().map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| err())? };
                    let tail = &body[pos + 1..];
                    let p = match tail.strip_prefix('^') {
                        Some(e) => e.parse::<usize>().map_err(|_| err())?,
                        None if tail.is_empty() => 1,
                        None => return Err(err()),
                    };
                    (c, p)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] += sign * coef;
        }
        Ok(coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn decode(&self, mut e: usize) -> Vec<u64> {
        let n = self.modulus as usize;
        (0..self.degree)
            .map(|_| {
                let d = e % n.max(1);
                e /= n.max(1);
                d as u64
            })
            .collect()
    }

    pub fn encode(&self, coeffs: &[u64]) -> usize {
        coeffs.iter().rev().fold(0usize, |acc, &c| acc * self.modulus as usize + c as usize)
    }

    fn shift(&self, coeffs: &[u64]) -> Vec<u64> {
        if self.degree == 0 {
            return Vec::new();
        }
        let n = self.modulus;
        let top = coeffs[self.degree - 1];
        let mut out = vec![0u64; self.degree];
        for i in 1..self.degree {
            out[i] = coeffs[i - 1];
        }
        for i in 0..self.degree {
            out[i] = (out[i] + top * self.reduction[i]) % n;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        self.encode(&x.iter().zip(&y).map(|(p, q)| (p + q) % self.modulus).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.decode(a);
        self.encode(&x.iter().map(|p| (self.modulus - p) % self.modulus).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `t · a`
    pub fn mul_t(&self, a: usize) -> usize {
        self.times_t[a]
    }

    /// `(1 - t) · a`
    pub fn mul_one_minus_t(&self, a: usize) -> usize {
        self.times_one_minus_t[a]
    }

    /// `t⁻¹ · a`
    pub fn mul_t_inv(&self, a: usize) -> usize {
        self.times_t.iter().position(|&x| x == a).expect("t is a unit")
    }

    /// `c · a` for an integer scalar `c`.
    pub fn scale(&self, c: i64, a: usize) -> usize {
        let c = c.rem_euclid(self.modulus as i64) as u64;
        let x = self.decode(a);
        self.encode(&x.iter().map(|p| (p * c) % self.modulus).collect::<Vec<_>>())
    }

    /// Human-readable polynomial form: `0`, `1`, `t`, `t+1`, `2t^2+1`, …
    pub fn label(&self, e: usize) -> String {
        let coeffs = self.decode(e);
        let mut out = String::new();
        for (p, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match (p, c) {
                (0, _) => write!(out, "{c}").unwrap(),
                (1, 1) => out.push('t'),
                (1, _) => write!(out, "{c}t").unwrap(),
                (_, 1) => write!(out, "t^{p}").unwrap(),
                _ => write!(out, "{c}t^{p}").unwrap(),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
