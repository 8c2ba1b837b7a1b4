//! Exact rational functions in `t` with integer coefficients, kept in a
//! reduced normal form, plus truncated power-series expansion.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 512;

static MAX_DEGREE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DEGREE);

/// Cap on numerator and denominator degree after normalization.
pub fn max_degree() -> usize {
    MAX_DEGREE.load(Ordering::Relaxed)
}

pub fn set_max_degree(limit: usize) {
    MAX_DEGREE.store(limit, Ordering::Relaxed);
}

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![BigInt::one()] }
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `coef · t^deg`.
    pub fn monomial(coef: BigInt, deg: usize) -> Self {
        let mut c = vec![BigInt::zero(); deg + 1];
        c[deg] = coef;
        Self::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Self::from_coeffs(self.c.iter().map(|x| x * k).collect())
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }

    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.content();
        Poly { c: self.c.iter().map(|x| x / &g).collect() }
    }

    // lc(d)^(deg self − deg d + 1) · self mod d.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let mut r = self.clone();
        let ld = d.lead().clone();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let lr = r.lead().clone();
            r = r.scale(&ld).sub(&Poly::monomial(lr, shift).mul(d));
        }
        r
    }

    /// Quotient when `d` divides `self` exactly over the integers.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.degree() - d.degree() + 1];
        let ld = d.lead();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let (quo, rem) = r.lead().div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&Poly::monomial(quo.clone(), shift).mul(d));
            q[shift] = quo;
        }
        if r.is_zero() {
            Some(Poly::from_coeffs(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = if a.degree() >= b.degree() {
            (a.primitive_part(), b.primitive_part())
        } else {
            (b.primitive_part(), a.primitive_part())
        };
        while !y.is_zero() {
            let r = x.pseudo_rem(&y).primitive_part();
            x = y;
            y = r;
        }
        if x.is_zero() {
            return Poly::zero();
        }
        if x.lead().is_negative() {
            x = x.neg();
        }
        x
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// `1 − t^m`.
    pub fn one_minus_power(m: usize) -> Poly {
        Poly::one().sub(&Poly::monomial(BigInt::one(), m))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let sign = if x.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = x.abs();
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let body = if i == 0 {
                mag.to_string()
            } else if mag.is_one() {
                var
            } else {
                format!("{mag}*{var}")
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// `num / den` in normal form: no common polynomial factor, coprime
/// contents, positive constant term in the denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct RationalSeries {
    num: Poly,
    den: Poly,
}

impl RationalSeries {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (mut num, mut den) = (num, den);
        let g = Poly::gcd(&num, &den);
        if g.degree() > 0 {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = Poly { c: num.c.iter().map(|x| x / &c).collect() };
            den = Poly { c: den.c.iter().map(|x| x / &c).collect() };
        }
        let low = den.c.iter().find(|x| !x.is_zero()).expect("nonzero denominator");
        if low.is_negative() {
            num = num.neg();
            den = den.neg();
        }
        if den.c[0].is_zero() {
            return Err(Error::NotExpandable);
        }
        let degree = num.degree().max(den.degree());
        if degree > max_degree() {
            return Err(Error::DegreeOverflow { degree, limit: max_degree() });
        }
        Ok(RationalSeries { num, den })
    }

    pub fn zero() -> Self {
        RationalSeries { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalSeries { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::new(Poly::from_i64(&[k]), Poly::one()).expect("constant series")
    }

    pub fn from_poly(p: Poly) -> Result<Self> {
        Self::new(p, Poly::one())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        Self::new(self.num.mul(&b).add(&o.num.mul(&a)), a.mul(&o.den))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalSeries { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn scale(&self, q: &BigRational) -> Result<Self> {
        Self::new(self.num.scale(q.numer()), self.den.scale(q.denom()))
    }

    pub fn scale_int(&self, k: i64) -> Result<Self> {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Power-series coefficients of degrees `0..=bound`.
    pub fn expand(&self, bound: usize) -> Vec<BigRational> {
        let d0 = BigRational::from_integer(self.den.c[0].clone());
        let mut out: Vec<BigRational> = Vec::with_capacity(bound + 1);
        for j in 0..=bound {
            let mut acc = BigRational::from_integer(self.num.coeff(j));
            for i in 1..=j.min(self.den.degree()) {
                let di = &self.den.c[i];
                if !di.is_zero() {
                    acc -= &out[j - i] * BigRational::from_integer(di.clone());
                }
            }
            out.push(acc / &d0);
        }
        out
    }

    /// Expansion when every coefficient is an integer.
    pub fn expand_integers(&self, bound: usize) -> Option<Vec<BigInt>> {
        self.expand(bound)
            .into_iter()
            .map(|q| if q.is_integer() { Some(q.to_integer()) } else { None })
            .collect()
    }

    /// Denominator as `c · Π (1 − t^m)^e`, when it has that shape.
    pub fn factored_denominator(&self) -> Option<(BigInt, Vec<(usize, usize)>)> {
        let mut rest = self.den.clone();
        let mut factors = Vec::new();
        let mut m = rest.degree();
        while m >= 1 {
            let f = Poly::one_minus_power(m);
            let mut mult = 0;
            while rest.degree() >= m {
                match rest.div_exact(&f) {
                    Some(q) => {
                        rest = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                factors.push((m, mult));
            }
            m = m.min(rest.degree() + 1) - 1;
        }
        if !rest.is_constant() {
            return None;
        }
        factors.reverse();
        Some((rest.coeff(0), factors))
    }
}

/// `(t^m / (1 − t^m))^e`.
pub fn geometric_block(m: usize, e: usize) -> Result<RationalSeries> {
    if m == 0 {
        return Err(invalid("geometric block needs m ≥ 1"));
    }
    let degree = m * e;
    if degree > max_degree() {
        return Err(Error::DegreeOverflow { degree, limit: max_degree() });
    }
    RationalSeries::new(Poly::monomial(BigInt::one(), m * e), Poly::one_minus_power(m).pow(e))
}

/// Sum of a list of series.
pub fn sum_series<'a, I: IntoIterator<Item = &'a RationalSeries>>(items: I) -> Result<RationalSeries> {
    items.into_iter().try_fold(RationalSeries::zero(), |acc, x| acc.try_add(x))
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        if self.den == Poly::one() {
            return write!(f, "{num}");
        }
        let single_term = self.num.c.iter().filter(|x| !x.is_zero()).count() == 1;
        let num = if single_term { num } else { format!("({num})") };
        let den = match self.factored_denominator() {
            Some((c, factors)) => {
                let mut atoms: Vec<String> = Vec::new();
                if !c.is_one() {
                    atoms.push(c.to_string());
                }
                for (m, e) in factors {
                    let base = if m == 1 { "(1-t)".to_string() } else { format!("(1-t^{m})") };
                    atoms.push(if e == 1 { base } else { format!("{base}^{e}") });
                }
                if atoms.len() == 1 {
                    atoms.pop().expect("one atom")
                } else {
                    format!("({})", atoms.join("*"))
                }
            }
            None => format!("({})", self.den),
        };
        write!(f, "{num}/{den}")
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct SeriesRepr {
    num: Vec<String>,
    den: Vec<String>,
}

impl From<RationalSeries> for SeriesRepr {
    fn from(r: RationalSeries) -> Self {
        let strings = |p: &Poly| p.c.iter().map(|x| x.to_string()).collect();
        SeriesRepr { num: strings(&r.num), den: strings(&r.den) }
    }
}

impl TryFrom<SeriesRepr> for RationalSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        let parse = |v: &[String]| -> Result<Poly> {
            v.iter()
                .map(|s| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("integer {s:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(Poly::from_coeffs)
        };
        RationalSeries::new(parse(&r.num)?, parse(&r.den)?)
    }
}

/// Exact rational as `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t_over(m: usize) -> RationalSeries {
        geometric_block(m, 1).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn arithmetic_examples() {
        let x = t_over(1);
        assert_eq!(x.try_add(&x).unwrap().to_string(), "2*t/(1-t)");
        assert_eq!(x.try_mul(&x).unwrap(), geometric_block(1, 2).unwrap());
        let free = geometric_block(1, 2).unwrap().try_sub(&t_over(2)).unwrap().scale(&half()).unwrap();
        assert_eq!(free.expand(6), ints(&[0, 0, 0, 1, 1, 2, 2]));
        assert_eq!(free.to_string(), "t^3/((1-t)*(1-t^2))");
    }

    #[test]
    fn block_examples() {
        assert_eq!(geometric_block(1, 2).unwrap().to_string(), "t^2/(1-t)^2");
        assert_eq!(geometric_block(2, 1).unwrap().to_string(), "t^2/(1-t^2)");
        assert_eq!(geometric_block(5, 0).unwrap(), RationalSeries::one());
        assert!(geometric_block(0, 1).is_err());
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(t_over(1).expand(4), ints(&[0, 1, 1, 1, 1]));
        assert_eq!(t_over(2).expand(6), ints(&[0, 0, 1, 0, 1, 0, 1]));
        assert_eq!(geometric_block(1, 2).unwrap().expand(5), ints(&[0, 0, 1, 2, 3, 4]));
    }

    #[test]
    fn display_forms() {
        let s = geometric_block(1, 1)
            .unwrap()
            .try_mul(&geometric_block(2, 1).unwrap())
            .unwrap()
            .try_mul(&geometric_block(1, 1).unwrap())
            .unwrap()
            .scale_int(2)
            .unwrap();
        assert_eq!(s.to_string(), "2*t^4/((1-t)^2*(1-t^2))");
        assert_eq!(t_over(1).scale(&half()).unwrap().to_string(), "t/(2*(1-t))");
        let odd = RationalSeries::new(Poly::from_i64(&[1]), Poly::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(odd.to_string(), "1/(1+t+t^2)");
        assert_eq!(RationalSeries::from_integer(-3).to_string(), "-3");
        assert_eq!(RationalSeries::zero().to_string(), "0");
    }

    #[test]
    fn normal_form_sign_and_content() {
        let a = RationalSeries::new(Poly::from_i64(&[0, -2]), Poly::from_i64(&[-4, 4])).unwrap();
        assert_eq!(a.numerator(), &Poly::from_i64(&[0, 1]));
        assert_eq!(a.denominator(), &Poly::from_i64(&[2, -2]));
        assert!(matches!(
            RationalSeries::new(Poly::one(), Poly::from_i64(&[0, 1])),
            Err(Error::NotExpandable)
        ));
        assert!(matches!(RationalSeries::new(Poly::one(), Poly::zero()), Err(Error::DivisionByZero)));
        assert!(matches!(t_over(1).try_div(&RationalSeries::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(geometric_block(600, 1), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn json_round_trip() {
        let s = geometric_block(2, 3).unwrap().scale(&half()).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"num":["0","0","0","0","0","0","1"],"den":["2","0","-6","0","6","0","-2"]}"#);
        let back: RationalSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    fn compositions_into_multiples(total: usize, parts: usize, m: usize) -> u64 {
        if parts == 0 {
            return u64::from(total == 0);
        }
        (1..=total / m).map(|x| compositions_into_multiples(total - x * m, parts - 1, m)).sum()
    }

    #[test]
    fn block_support_matches_composition_count() {
        for m in 1..=4 {
            for e in 0..=4 {
                let coeffs = geometric_block(m, e).unwrap().expand(24);
                for (deg, c) in coeffs.iter().enumerate() {
                    let want = compositions_into_multiples(deg, e, m);
                    assert_eq!(*c, BigRational::from_integer(want.into()), "m={m} e={e} deg={deg}");
                }
            }
        }
    }

    fn small_series() -> impl Strategy<Value = RationalSeries> {
        (
            proptest::collection::vec(-4i64..=4, 0..4),
            proptest::collection::vec(-3i64..=3, 0..3),
            prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)],
        )
            .prop_map(|(num, tail, lead)| {
                let mut den = vec![lead];
                den.extend(tail);
                RationalSeries::new(Poly::from_i64(&num), Poly::from_i64(&den)).unwrap()
            })
    }

    fn convolve(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        (0..a.len())
            .map(|j| (0..=j).map(|i| &a[i] * &b[j - i]).fold(BigRational::zero(), |x, y| x + y))
            .collect()
    }

    proptest! {
        #[test]
        fn expand_is_a_ring_map(a in small_series(), b in small_series()) {
            let d = 8;
            let ea = a.expand(d);
            let eb = b.expand(d);
            prop_assert_eq!(a.try_mul(&b).unwrap().expand(d), convolve(&ea, &eb));
            let sum: Vec<BigRational> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
            prop_assert_eq!(a.try_add(&b).unwrap().expand(d), sum);
        }

        #[test]
        fn normalize_is_idempotent(a in small_series(), k in 1i64..5, extra in proptest::collection::vec(-2i64..=2, 1..3)) {
            let again = RationalSeries::new(a.numerator().clone(), a.denominator().clone()).unwrap();
            prop_assert_eq!(&again, &a);
            // Multiply top and bottom by a common factor with nonzero constant term.
            let mut f = vec![k];
            f.extend(extra);
            let f = Poly::from_i64(&f);
            let inflated = RationalSeries::new(a.numerator().mul(&f), a.denominator().mul(&f)).unwrap();
            prop_assert_eq!(inflated, a);
        }

        #[test]
        fn division_inverts_multiplication(a in small_series(), b in small_series()) {
            prop_assume!(!b.is_zero());
            let prod = a.try_mul(&b).unwrap();
            if let Ok(q) = prod.try_div(&b) {
                prop_assert_eq!(q, a);
            }
        }
    }
}
