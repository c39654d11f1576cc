//! Exact 2x2 integer-matrix algebra over PSL2(Z) / PGL2(Z).
//!
//! Provides the `B_a = [[0,1],[1,a]]` products attached to continued-fraction
//! words, the constructive factorization of a matrix fixing a reduced surd
//! into such a product, reduction of unimodular matrices to words in the
//! generators `S`, `U`, the Rademacher function, hyperbolic conjugacy keys,
//! and the inert/reciprocal classification of words.

use crate::error::{Error, Result};
use crate::surd::QuadraticSurd;
use crate::word::PeriodicWord;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;

/// 2x2 matrix with arbitrary-precision integer entries, used projectively
/// (`M` and `-M` are the same group element).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMatrix2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        IntMatrix2::new(1, 0, 0, 1)
    }

    /// `S = [[0,-1],[1,0]]`.
    pub fn gen_s() -> Self {
        IntMatrix2::new(0, -1, 1, 0)
    }

    /// `U = [[1,-1],[1,0]]`.
    pub fn gen_u() -> Self {
        IntMatrix2::new(1, -1, 1, 0)
    }

    /// Orientation-reversing involution `w = [[1,0],[0,-1]]`.
    pub fn gen_w() -> Self {
        IntMatrix2::new(1, 0, 0, -1)
    }

    /// `B_a = [[0,1],[1,a]]`.
    pub fn b_gen(a: u64) -> Self {
        IntMatrix2 {
            a: BigInt::ZERO,
            b: BigInt::one(),
            c: BigInt::one(),
            d: BigInt::from(a),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, rhs: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn neg(&self) -> IntMatrix2 {
        IntMatrix2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Inverse of a unimodular matrix (`|det| = 1`).
    pub fn inverse(&self) -> Result<IntMatrix2> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det.abs().to_string()));
        }
        let m = IntMatrix2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        };
        Ok(if det == BigInt::one() { m } else { m.neg() })
    }

    pub fn pow(&self, n: u32) -> IntMatrix2 {
        let mut acc = IntMatrix2::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sign-normalized representative: the first nonzero entry in reading
    /// order is positive.
    pub fn proj_normalized(&self) -> IntMatrix2 {
        for e in [&self.a, &self.b, &self.c, &self.d] {
            if e.is_positive() {
                return self.clone();
            }
            if e.is_negative() {
                return self.neg();
            }
        }
        self.clone()
    }

    pub fn proj_eq(&self, rhs: &IntMatrix2) -> bool {
        self.proj_normalized() == rhs.proj_normalized()
    }

    pub fn is_identity_projective(&self) -> bool {
        self.proj_eq(&IntMatrix2::identity())
    }

    fn all_positive(&self) -> bool {
        self.a.is_positive() && self.b.is_positive() && self.c.is_positive() && self.d.is_positive()
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Product `B_{a_1} ... B_{a_n}` of a word.
pub fn word_to_matrix(w: &PeriodicWord) -> IntMatrix2 {
    let mut m = IntMatrix2::identity();
    for &a in w.digits() {
        m = m.mul(&IntMatrix2::b_gen(a));
    }
    m
}

/// Matrix of the minimal even expansion (doubled word when the period is odd).
pub fn even_expansion_matrix(w: &PeriodicWord) -> IntMatrix2 {
    word_to_matrix(&w.minimal_even_expansion())
}

// ---------------------------------------------------------------------------
// S/U words and the Rademacher function
// ---------------------------------------------------------------------------

/// Token of a word in the generators of `PSL2(Z) = <S, U | S^2 = U^3 = 1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuToken {
    S,
    /// `U^e` with `e` in `{1, -1}`.
    U(i8),
}

/// Freely reduced word in `S`, `U^{+-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuWord(Vec<SuToken>);

fn norm_exp(e: i32) -> i8 {
    match e.rem_euclid(3) {
        0 => 0,
        1 => 1,
        2 => -1,
        _ => unreachable!(),
    }
}

impl SuWord {
    fn push_reduced(v: &mut Vec<SuToken>, tok: SuToken) {
        match (v.last().copied(), tok) {
            (Some(SuToken::S), SuToken::S) => {
                v.pop();
            }
            (Some(SuToken::U(e1)), SuToken::U(e2)) => {
                let e = norm_exp(e1 as i32 + e2 as i32);
                v.pop();
                if e != 0 {
                    v.push(SuToken::U(e));
                }
            }
            _ => v.push(tok),
        }
    }

    pub fn from_tokens(tokens: impl IntoIterator<Item = SuToken>) -> SuWord {
        let mut v = Vec::new();
        for t in tokens {
            Self::push_reduced(&mut v, t);
        }
        SuWord(v)
    }

    pub fn tokens(&self) -> &[SuToken] {
        &self.0
    }

    /// Conjugate until the first and last letters no longer combine.
    pub fn cyclically_reduced(&self) -> SuWord {
        let mut v = self.0.clone();
        loop {
            if v.len() < 2 {
                return SuWord(v);
            }
            match (v[0], *v.last().unwrap()) {
                (SuToken::S, SuToken::S) => {
                    v.pop();
                    v.remove(0);
                }
                (SuToken::U(e0), SuToken::U(e1)) => {
                    let e = norm_exp(e0 as i32 + e1 as i32);
                    v.remove(0);
                    v.pop();
                    if e != 0 {
                        v.push(SuToken::U(e));
                    }
                }
                _ => return SuWord(v),
            }
        }
    }

    /// Sum of `U`-exponents.
    pub fn u_exponent_sum(&self) -> i64 {
        self.0
            .iter()
            .map(|t| match t {
                SuToken::U(e) => *e as i64,
                SuToken::S => 0,
            })
            .sum()
    }

    /// Matrix of the word (a representative in SL2(Z)).
    pub fn to_matrix(&self) -> IntMatrix2 {
        let s = IntMatrix2::gen_s();
        let u = IntMatrix2::gen_u();
        let u_inv = u.pow(2); // U^2 = U^{-1} in PSL2
        let mut m = IntMatrix2::identity();
        for t in &self.0 {
            m = match t {
                SuToken::S => m.mul(&s),
                SuToken::U(1) => m.mul(&u),
                SuToken::U(-1) => m.mul(&u_inv),
                SuToken::U(e) => unreachable!("bad exponent {e}"),
            };
        }
        m
    }
}

impl fmt::Display for SuWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for t in &self.0 {
            match t {
                SuToken::S => write!(f, "S")?,
                SuToken::U(1) => write!(f, "U")?,
                SuToken::U(-1) => write!(f, "u")?, // U^{-1}
                SuToken::U(e) => write!(f, "U^{e}")?,
            }
        }
        Ok(())
    }
}

/// Reduced word in `S`, `U` equal to `A` projectively, via the Euclidean
/// decomposition of `A` into `S` and `T = US` and free reduction.
pub fn matrix_to_su_word(a: &IntMatrix2) -> Result<SuWord> {
    if a.det() != BigInt::one() {
        return Err(Error::NotPsl2(a.det().to_string()));
    }
    let mut m = a.clone();
    let mut t_exponents: Vec<BigInt> = Vec::new();
    while !m.c.is_zero() {
        let q = m.a.div_floor(&m.c);
        // m <- S^{-1} T^{-q} m
        let next = IntMatrix2 {
            a: m.c.clone(),
            b: m.d.clone(),
            c: -(&m.a - &q * &m.c),
            d: -(&m.b - &q * &m.d),
        };
        t_exponents.push(q);
        m = next;
    }
    // c = 0 and det = 1 force a = d = +-1, so m = +-T^{a*b}.
    let tail = &m.a * &m.b;

    let mut tokens: Vec<SuToken> = Vec::new();
    let mut push_t_power = |tokens: &mut Vec<SuToken>, q: &BigInt| {
        let n = q
            .abs()
            .to_u64()
            .expect("T-exponent magnitude exceeds u64 range");
        for _ in 0..n {
            if q.is_positive() {
                tokens.push(SuToken::U(1));
                tokens.push(SuToken::S);
            } else {
                tokens.push(SuToken::S);
                tokens.push(SuToken::U(-1));
            }
        }
    };
    for q in &t_exponents {
        push_t_power(&mut tokens, q);
        tokens.push(SuToken::S);
    }
    push_t_power(&mut tokens, &tail);
    Ok(SuWord::from_tokens(tokens))
}

/// Rademacher function on PSL2(Z): zero on the class of `S`, `-+2` on
/// `U^{+-1}`, and the `U`-exponent sum on alternating words.
pub fn rademacher(a: &IntMatrix2) -> Result<i64> {
    let word = matrix_to_su_word(a)?.cyclically_reduced();
    Ok(match word.tokens() {
        [] | [SuToken::S] => 0,
        [SuToken::U(e)] => -2 * (*e as i64),
        _ => word.u_exponent_sum(),
    })
}

// ---------------------------------------------------------------------------
// Dedekind-sum cross-check
// ---------------------------------------------------------------------------

/// Dedekind sum `s(h, k)` for `k >= 1`, `gcd(h, k) = 1`, via reciprocity.
pub fn dedekind_sum(h: &BigInt, k: &BigInt) -> BigRational {
    assert!(k.is_positive());
    let mut h = h.mod_floor(k);
    let mut k = k.clone();
    let mut acc = BigRational::zero();
    let mut sign = BigRational::one();
    while !h.is_zero() {
        // s(h,k) = -1/4 + (h^2 + k^2 + 1) / (12 h k) - s(k mod h, h)
        let quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
        let num = &h * &h + &k * &k + BigInt::one();
        let den = BigInt::from(12) * &h * &k;
        let term = quarter + BigRational::new(num, den);
        acc += &sign * term;
        sign = -sign;
        let nh = k.mod_floor(&h);
        k = h;
        h = nh;
    }
    acc
}

/// Closed-form evaluation of the Rademacher function through Dedekind sums:
/// `Phi(A) = (a+d)/c - 12 sgn(c) s(d, |c|)` and
/// `Psi(A) = Phi(A) - 3 sgn(c (a+d))`, with `Psi(A) = b/d` when `c = 0`.
pub fn rademacher_dedekind(m: &IntMatrix2) -> Result<i64> {
    if m.det() != BigInt::one() {
        return Err(Error::NotPsl2(m.det().to_string()));
    }
    if m.c.is_zero() {
        // a = d = +-1; Psi(T^n) = n
        let v = (&m.b * &m.d).to_i64().expect("Psi exceeds i64");
        return Ok(v);
    }
    let tr = m.trace();
    let sgn_c = BigInt::from(m.c.signum().to_i64().unwrap());
    let phi = BigRational::new(tr.clone(), m.c.clone())
        - BigRational::from_integer(BigInt::from(12) * &sgn_c) * dedekind_sum(&m.d, &m.c.abs());
    let correction = 3 * (&m.c * &tr).signum();
    let psi = phi - BigRational::from_integer(correction);
    assert!(psi.is_integer(), "Rademacher value must be an integer");
    Ok(psi.to_integer().to_i64().expect("Psi exceeds i64"))
}

// ---------------------------------------------------------------------------
// B-product factorization (constructive form of the fixing-group lemma)
// ---------------------------------------------------------------------------

/// Merges `B_x B_0 B_y = B_{x+y}` occurrences; fails on zeros that cannot be
/// merged away or on nonpositive digits.
fn normalize_digits(mut raw: Vec<BigInt>) -> Option<Vec<u64>> {
    loop {
        if raw.iter().any(|d| d.is_negative()) {
            return None;
        }
        match raw.iter().position(|d| d.is_zero()) {
            None => break,
            Some(i) => {
                if i == 0 || i + 1 == raw.len() {
                    return None;
                }
                let merged = &raw[i - 1] + &raw[i + 1];
                raw.splice(i - 1..=i + 1, [merged]);
            }
        }
    }
    if raw.is_empty() {
        return None;
    }
    raw.into_iter().map(|d| d.to_u64()).collect()
}

/// Tries to express `M` (projectively) as a product of `B_a` factors with
/// positive digits, following the peeling reduction and its terminal-case
/// rewritings. Returns the digits on success.
fn express_b_product(m0: &IntMatrix2) -> Option<Vec<u64>> {
    // Direct B_d pattern, up to sign.
    for cand in [m0.clone(), m0.neg()] {
        if cand.a.is_zero()
            && cand.b.is_one()
            && cand.c.is_one()
            && cand.d.is_positive()
        {
            return Some(vec![cand.d.to_u64()?]);
        }
    }
    // Positive-entry representative.
    let mut m = if m0.all_positive() {
        m0.clone()
    } else if m0.neg().all_positive() {
        m0.neg()
    } else {
        return None;
    };

    let mut raw: Vec<BigInt> = Vec::new();
    let digits = loop {
        // Peel B_{b1} from the left: b1 = floor(c / a).
        let b1 = m.c.div_floor(&m.a);
        let next = IntMatrix2 {
            a: &m.c - &b1 * &m.a,
            b: &m.d - &b1 * &m.b,
            c: m.a.clone(),
            d: m.b.clone(),
        };
        raw.push(b1);
        m = next;

        if m.a.is_zero() {
            // Terminal (0, +-1; 1, d').
            if !m.c.is_one() {
                return None;
            }
            if m.b.is_one() {
                if !m.d.is_positive() {
                    return None;
                }
                raw.push(m.d.clone());
                break normalize_digits(raw)?;
            }
            if m.b == BigInt::from(-1) {
                // Repeatedly resolve the (0,-1;1,d') terminal.
                let mut dp = m.d.clone();
                loop {
                    let bk = raw.pop()?;
                    if bk.is_zero() {
                        // B_{b_{k-1}} B_0 (0,-1;1,d') = (0,-1;1, d' - b_{k-1})
                        let prev = raw.pop()?;
                        dp -= prev;
                        if !dp.is_positive() {
                            return None;
                        }
                        continue;
                    }
                    // B_{b_k} (0,-1;1,d') = B_{b_k - 1} B_1 B_{d'-1}
                    raw.push(&bk - 1);
                    raw.push(BigInt::one());
                    raw.push(&dp - 1);
                    break;
                }
                break normalize_digits(raw)?;
            }
            return None;
        }
        if m.b.is_zero() {
            // (a', 0; c', d') is the excluded parabolic terminal.
            return None;
        }
        if !m.all_positive() {
            return None;
        }
    };

    // The rewriting identities are easy to get subtly wrong; verify.
    let prod = digits
        .iter()
        .fold(IntMatrix2::identity(), |acc, &d| acc.mul(&IntMatrix2::b_gen(d)));
    if prod.proj_eq(m0) {
        Some(digits)
    } else {
        None
    }
}

fn fixes_projectively(m: &IntMatrix2, x: &QuadraticSurd) -> bool {
    // x satisfies Q t^2 - 2P t - R = 0; M fixes x iff (c, d-a, -b) is
    // proportional to (Q, -2P, -R).
    let (fq, fp, fr) = (x.q().clone(), BigInt::from(-2) * x.p(), -x.r());
    let (mc, md, mb) = (m.c.clone(), &m.d - &m.a, -&m.b);
    &mc * &fp == &md * &fq && &mc * &fr == &mb * &fq && &md * &fr == &mb * &fp
}

/// Factorization of a matrix fixing the reduced surd `x`: returns
/// `(u, m, sigma)` with `B = sigma * (B_{u_1} ... B_{u_n})^m`, where `u` is
/// the periodic expansion of `x` and `m` is a nonzero integer.
pub fn ba_factorize(b: &IntMatrix2, x: &QuadraticSurd) -> Result<(PeriodicWord, i64, i8)> {
    if b.det().abs() != BigInt::one() {
        return Err(Error::NotUnimodular(b.det().abs().to_string()));
    }
    if b.is_identity_projective() {
        return Err(Error::IdentityInput);
    }
    if !x.is_reduced() {
        return Err(Error::InconsistentPair(format!("{x} is not reduced")));
    }
    if !fixes_projectively(b, x) {
        return Err(Error::DoesNotFix);
    }
    let u = x.expansion()?;

    let (digits, inverted) = match express_b_product(b) {
        Some(d) => (d, false),
        None => {
            let inv = b.inverse()?;
            match express_b_product(&inv) {
                Some(d) => (d, true),
                None => {
                    return Err(Error::NotBProduct(format!(
                        "neither {b} nor its inverse is a positive B-product"
                    )))
                }
            }
        }
    };

    // digits must be u repeated m times
    let n = u.len();
    if digits.len() % n != 0 {
        return Err(Error::NotBProduct(format!(
            "digit string length {} is not a multiple of the period {n}",
            digits.len()
        )));
    }
    let m_abs = digits.len() / n;
    if digits != u.repeat(m_abs).digits() {
        return Err(Error::NotBProduct(
            "digit string is not a power of the expansion of x".into(),
        ));
    }

    let base = word_to_matrix(&u).pow(m_abs as u32);
    let candidate = if inverted { base.inverse()? } else { base };
    let sigma = if *b == candidate {
        1
    } else if *b == candidate.neg() {
        -1
    } else {
        return Err(Error::NotBProduct("sign verification failed".into()));
    };
    let exponent = if inverted { -(m_abs as i64) } else { m_abs as i64 };
    Ok((u, exponent, sigma))
}

// ---------------------------------------------------------------------------
// Conjugacy keys and symmetry classification
// ---------------------------------------------------------------------------

/// Canonical primitive word of the attracting fixed point of a hyperbolic
/// matrix, plus the power of the primitive element it represents. Two
/// hyperbolic matrices in PSL2(Z) are conjugate iff their keys agree.
pub fn conjugacy_class_key(a: &IntMatrix2) -> Result<(PeriodicWord, u32)> {
    if a.det() != BigInt::one() {
        return Err(Error::NotPsl2(a.det().to_string()));
    }
    let tr = a.trace();
    if tr.abs() <= BigInt::from(2) {
        return Err(Error::NotHyperbolic(tr.to_string()));
    }
    let rep = if tr.is_negative() { a.neg() } else { a.clone() };
    let tr = rep.trace();

    // Attracting fixed point (a - d + sqrt(tr^2 - 4)) / (2c).
    let disc = &tr * &tr - BigInt::from(4);
    let x = QuadraticSurd::new(&rep.a - &rep.d, disc, BigInt::from(2) * &rep.c)?;

    // Continued-fraction expansion until the state cycles.
    let mut seen: HashMap<(BigInt, BigInt, BigInt), usize> = HashMap::new();
    let mut digits: Vec<BigInt> = Vec::new();
    let mut st = x;
    let cycle = loop {
        let key = (st.p().clone(), st.d().clone(), st.q().clone());
        if let Some(&i) = seen.get(&key) {
            break digits[i..].to_vec();
        }
        seen.insert(key, digits.len());
        let (digit, next) = st.cf_step();
        digits.push(digit);
        st = next;
    };
    let cycle_digits: Option<Vec<u64>> = cycle.iter().map(|d| d.to_u64()).collect();
    let word = PeriodicWord::new(
        cycle_digits.ok_or_else(|| Error::InvalidParameter("cycle digit exceeds u64".into()))?,
    )?;

    // Power: trace of M_prim^k must match the trace of the input.
    let prim = if word.len() % 2 == 0 {
        word_to_matrix(&word)
    } else {
        let m = word_to_matrix(&word);
        m.mul(&m)
    };
    let mut mk = prim.clone();
    let mut k = 1u32;
    while mk.trace() < tr {
        mk = mk.mul(&prim);
        k += 1;
        if k > 4096 {
            return Err(Error::TrackingLost(
                "conjugacy power search did not terminate".into(),
            ));
        }
    }
    if mk.trace() != tr {
        return Err(Error::TrackingLost(format!(
            "no power of the primitive element has trace {tr}"
        )));
    }
    Ok((word.canonical(), k))
}

/// Orientation/time-reversal symmetry flags of the geodesic pair attached to
/// a primitive word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryClass {
    pub inert: bool,
    pub reciprocal: bool,
}

pub fn classify_symmetry(w: &PeriodicWord) -> Result<SymmetryClass> {
    if !w.is_primitive() {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    let b = word_to_matrix(w);
    let odd = w.len() % 2 == 1;
    let expected_det = if odd { BigInt::from(-1) } else { BigInt::one() };
    if b.det() != expected_det {
        return Err(Error::NotUnimodular(format!(
            "B-product of {w} has det {}",
            b.det()
        )));
    }
    if odd {
        // Inert certificate: A = B^2 with det(B) = -1, exactly.
        let a = word_to_matrix(&w.repeat(2));
        if a != b.mul(&b) {
            return Err(Error::InconsistentPair(format!(
                "doubled-word matrix of {w} is not the square of its B-product"
            )));
        }
    }
    let reciprocal = w.canonical() == w.reversed().canonical();
    Ok(SymmetryClass {
        inert: odd,
        reciprocal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(digits: &[u64]) -> PeriodicWord {
        PeriodicWord::new(digits.to_vec()).unwrap()
    }

    #[test]
    fn word_to_matrix_examples() {
        assert_eq!(word_to_matrix(&w(&[1, 2])), IntMatrix2::new(1, 2, 1, 3));
        assert_eq!(word_to_matrix(&w(&[1])), IntMatrix2::new(0, 1, 1, 1));
        assert_eq!(word_to_matrix(&w(&[2, 2])), IntMatrix2::new(1, 2, 2, 5));
    }

    #[test]
    fn su_word_of_s_is_s() {
        let word = matrix_to_su_word(&IntMatrix2::gen_s()).unwrap();
        assert_eq!(word.tokens(), &[SuToken::S]);
    }

    #[test]
    fn su_word_reconstructs_matrix() {
        for m in [
            IntMatrix2::new(1, 1, 0, 1),
            IntMatrix2::new(1, 2, 1, 3),
            IntMatrix2::new(2, 3, 1, 2),
            IntMatrix2::new(5, 2, 2, 1),
            IntMatrix2::new(0, -1, 1, 5),
            IntMatrix2::new(-3, -1, 7, 2),
        ] {
            assert_eq!(m.det(), BigInt::one(), "test matrix {m}");
            let word = matrix_to_su_word(&m).unwrap();
            assert!(
                word.to_matrix().proj_eq(&m),
                "reconstruction failed for {m}: got {}",
                word.to_matrix()
            );
        }
    }

    #[test]
    fn translation_is_us() {
        // [[1,1],[0,1]] = T must reduce to the word US (projectively).
        let word = matrix_to_su_word(&IntMatrix2::new(1, 1, 0, 1)).unwrap();
        assert!(word.to_matrix().proj_eq(&IntMatrix2::new(1, 1, 0, 1)));
        assert_eq!(word.tokens().len(), 2);
    }

    #[test]
    fn rademacher_generators() {
        assert_eq!(rademacher(&IntMatrix2::gen_s()).unwrap(), 0);
        assert_eq!(rademacher(&IntMatrix2::gen_u()).unwrap(), -2);
        let u_inv = IntMatrix2::gen_u().pow(2);
        assert_eq!(rademacher(&u_inv).unwrap(), 2);
        assert_eq!(rademacher(&IntMatrix2::new(1, 1, 0, 1)).unwrap(), 1);
        assert_eq!(rademacher(&IntMatrix2::new(1, -5, 0, 1)).unwrap(), -5);
    }

    #[test]
    fn rademacher_matches_alternating_sum() {
        // Psi(B_{a_1} ... B_{a_{2n}}) = -a_1 + a_2 - ...
        let m = word_to_matrix(&w(&[1, 2]));
        assert_eq!(rademacher(&m).unwrap(), 1);
        let m = word_to_matrix(&w(&[3, 1, 2, 2]));
        assert_eq!(rademacher(&m).unwrap(), -2);
        // Odd words through their even doubling give zero.
        let m = word_to_matrix(&w(&[1, 1]));
        assert_eq!(rademacher(&m).unwrap(), 0);
    }

    #[test]
    fn rademacher_antisymmetry() {
        let a = word_to_matrix(&w(&[3, 1, 2, 2]));
        let psi = rademacher(&a).unwrap();
        assert_eq!(rademacher(&a.inverse().unwrap()).unwrap(), -psi);
        let ww = IntMatrix2::gen_w();
        let conj = ww.mul(&a).mul(&ww);
        assert_eq!(rademacher(&conj).unwrap(), -psi);
    }

    #[test]
    fn rademacher_conjugation_invariance() {
        let a = word_to_matrix(&w(&[2, 1, 1, 3]));
        let psi = rademacher(&a).unwrap();
        let g1 = IntMatrix2::new(1, 1, 0, 1);
        let g2 = IntMatrix2::new(2, 1, 1, 1);
        for g in [g1, g2] {
            let conj = g.mul(&a).mul(&g.inverse().unwrap());
            assert_eq!(rademacher(&conj).unwrap(), psi);
        }
    }

    #[test]
    fn dedekind_sum_small_values() {
        let s = dedekind_sum(&BigInt::from(1), &BigInt::from(3));
        assert_eq!(s, BigRational::new(BigInt::from(1), BigInt::from(18)));
        let s = dedekind_sum(&BigInt::from(1), &BigInt::from(5));
        assert_eq!(s, BigRational::new(BigInt::from(1), BigInt::from(5)));
    }

    #[test]
    fn dedekind_route_agrees_with_word_route() {
        for word in [
            w(&[1, 2]),
            w(&[3, 1, 2, 2]),
            w(&[1, 1]),
            w(&[2, 2, 1, 1]),
            w(&[5, 1, 1, 2]),
        ] {
            let m = word_to_matrix(&word);
            assert_eq!(
                rademacher(&m).unwrap(),
                rademacher_dedekind(&m).unwrap(),
                "mismatch for word {word}"
            );
        }
        // Elliptic and parabolic inputs too.
        for m in [
            IntMatrix2::gen_s(),
            IntMatrix2::gen_u(),
            IntMatrix2::gen_u().pow(2),
            IntMatrix2::new(1, 7, 0, 1),
            IntMatrix2::new(1, -1, 2, -1),
        ] {
            assert_eq!(rademacher(&m).unwrap(), rademacher_dedekind(&m).unwrap());
        }
    }

    #[test]
    fn ba_factorize_examples() {
        let x12 = crate::orbit::surd_from_word(&w(&[1, 2])).unwrap();
        let (u, m, s) = ba_factorize(&IntMatrix2::new(1, 2, 1, 3), &x12).unwrap();
        assert_eq!((u.digits(), m, s), (&[1u64, 2][..], 1, 1));

        let x1 = crate::orbit::surd_from_word(&w(&[1])).unwrap();
        let (u, m, _s) = ba_factorize(&IntMatrix2::new(0, 1, 1, 1), &x1).unwrap();
        assert_eq!((u.digits(), m), (&[1u64][..], 1));

        // (B_1 B_1)^{-1} = [[2,-1],[-1,1]]
        let (u, m, s) = ba_factorize(&IntMatrix2::new(2, -1, -1, 1), &x1).unwrap();
        assert_eq!((u.digits(), m), (&[1u64][..], -2));
        assert_eq!(s, 1);
    }

    #[test]
    fn ba_factorize_rejects_bad_input() {
        let x1 = crate::orbit::surd_from_word(&w(&[1])).unwrap();
        assert!(matches!(
            ba_factorize(&IntMatrix2::identity(), &x1),
            Err(Error::IdentityInput)
        ));
        assert!(matches!(
            ba_factorize(&IntMatrix2::new(1, 2, 1, 3), &x1),
            Err(Error::DoesNotFix)
        ));
        assert!(matches!(
            ba_factorize(&IntMatrix2::new(2, 0, 0, 1), &x1),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn conjugacy_key_examples() {
        let (word, k) = conjugacy_class_key(&IntMatrix2::new(1, 2, 1, 3)).unwrap();
        assert_eq!((word.digits(), k), (&[1u64, 2][..], 1));

        // Conjugate of B_1 B_2 by [[1,1],[0,1]].
        let (word, k) = conjugacy_class_key(&IntMatrix2::new(2, 3, 1, 2)).unwrap();
        assert_eq!((word.digits(), k), (&[1u64, 2][..], 1));

        // B_1^2 = [[1,1],[1,2]] is the square of the period-1 class.
        let (word, k) = conjugacy_class_key(&IntMatrix2::new(1, 1, 1, 2)).unwrap();
        assert_eq!((word.digits(), k), (&[1u64][..], 2));

        assert!(matches!(
            conjugacy_class_key(&IntMatrix2::gen_s()),
            Err(Error::NotHyperbolic(_))
        ));
    }

    #[test]
    fn key_is_conjugation_invariant_and_detects_inverse() {
        let a = word_to_matrix(&w(&[1, 2, 1, 3]));
        let g = IntMatrix2::new(3, 2, 1, 1);
        let conj = g.mul(&a).mul(&g.inverse().unwrap());
        assert_eq!(
            conjugacy_class_key(&a).unwrap(),
            conjugacy_class_key(&conj).unwrap()
        );
        // A^{-1} belongs to the reversed word's class.
        let (word_inv, _) = conjugacy_class_key(&a.inverse().unwrap()).unwrap();
        assert_eq!(word_inv, w(&[1, 2, 1, 3]).reversed().canonical());
    }

    #[test]
    fn classify_symmetry_examples() {
        let c = classify_symmetry(&w(&[1])).unwrap();
        assert!(c.inert && c.reciprocal);
        let c = classify_symmetry(&w(&[1, 2])).unwrap();
        assert!(!c.inert);
        // (1,2) reversed is (2,1) ~ (1,2): reciprocal.
        assert!(c.reciprocal);
        let c = classify_symmetry(&w(&[1, 1, 2, 3])).unwrap();
        assert!(!c.inert);
        // reversed (3,2,1,1) ~ canonical (1,1,3,2) != (1,1,2,3)
        assert!(!c.reciprocal);
    }

    #[test]
    fn reciprocal_flag_matches_matrix_route() {
        // Exhaustive over primitive words with digit sum <= 8.
        let mut checked = 0usize;
        for word in crate::census::words_with_digit_sum_up_to(8) {
            if !word.is_canonical_primitive() {
                continue;
            }
            let a = even_expansion_matrix(&word);
            let flag = classify_symmetry(&word).unwrap().reciprocal;
            let matrix_flag = conjugacy_class_key(&a).unwrap()
                == conjugacy_class_key(&a.inverse().unwrap()).unwrap();
            assert_eq!(flag, matrix_flag, "word {word}");
            checked += 1;
        }
        assert!(checked > 50);
    }

    #[test]
    fn factorization_roundtrip_small_words() {
        for word in crate::census::words_with_digit_sum_up_to(6) {
            if !word.is_canonical_primitive() {
                continue;
            }
            let x = crate::orbit::surd_from_word(&word).unwrap();
            let base = word_to_matrix(&word);
            for m in 1..=3u32 {
                let (u, e, s) = ba_factorize(&base.pow(m), &x).unwrap();
                assert_eq!(u, word);
                assert_eq!(e, m as i64);
                assert_eq!(s, 1);
            }
        }
    }
}
