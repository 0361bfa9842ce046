use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{bareiss_determinant, ExactError, ExactRing};

type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with rational coefficients over a fixed,
/// ordered list of variable names.
///
/// Zero coefficients are never stored. Arithmetic between polynomials
/// over different variable lists panics; use [`Poly::with_vars`] to move a
/// polynomial into a larger ring first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, BigRational>,
}

impl Poly {
    pub fn zero(vars: &[&str]) -> Self {
        Poly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn monomial(vars: &[&str], coeff: BigRational, exps: &[u32]) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut p = Self::zero(vars);
        p.add_term(exps.to_vec(), coeff);
        p
    }

    /// Parses expressions such as `x*(y^2 + x^2) - 3/4*z`. Multiplication
    /// must be written explicitly.
    pub fn parse(vars: &[&str], src: &str) -> Result<Self, String> {
        let mut parser = Parser {
            vars,
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let p = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(format!(
                "unexpected `{}` at {}",
                parser.chars[parser.pos], parser.pos
            ));
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, ExactError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ExactError::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_vars(&self, other: &Poly) {
        assert!(
            self.vars == other.vars,
            "polynomial variable lists differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that actually occurs.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Poly, ExactError> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = Poly::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => ne[j] = k,
                    None => return Err(ExactError::UnknownVariable(self.vars[i].clone())),
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term: the multiplicity at the origin.
    /// `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Coefficients with respect to one variable, lowest power first; the
    /// coefficients stay in the same ring (the variable simply does not
    /// occur in them).
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![
            Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new()
            };
            deg + 1
        ];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[var] as usize;
            ne[var] = 0;
            out[k].terms.insert(ne, c.clone());
        }
        out
    }

    /// Coefficients of a polynomial in a single variable (all other
    /// exponents zero), lowest power first.
    pub fn univariate_coeffs(&self, var: usize) -> Option<Vec<BigRational>> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![BigRational::zero(); deg + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k != 0) {
                return None;
            }
            out[e[var] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::constant(&self.var_refs(), BigRational::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c * BigRational::from_integer(BigInt::from(e[var])));
        }
        out
    }

    /// Replaces the variable `var` by `value` (a polynomial over the same
    /// variable list).
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        self.check_vars(value);
        let mut powers: Vec<Poly> = vec![Poly::constant(&self.var_refs(), BigRational::one())];
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[var] = 0;
            let mono = Poly::monomial(&self.var_refs(), c.clone(), &rest);
            out = &out + &(&mono * &powers[k]);
        }
        out
    }

    pub fn substitute_named(&self, name: &str, value: &Poly) -> Result<Poly, ExactError> {
        Ok(self.substitute(self.var_index(name)?, value))
    }

    /// Evaluates at a point given in variable order.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    /// Divides every term by `var^k`; errors unless each term is divisible.
    pub fn div_var_power(&self, var: usize, k: u32) -> Result<Poly, ExactError> {
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[var] < k {
                return Err(ExactError::InexactDivision);
            }
            let mut ne = e.clone();
            ne[var] -= k;
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    fn leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Exact quotient `self / divisor`; `InexactDivision` when the
    /// remainder of multivariate division (graded-lex order) is nonzero.
    pub fn divide_exact(&self, divisor: &Poly) -> Result<Poly, ExactError> {
        self.check_vars(divisor);
        let (lead_e, lead_c) = divisor.leading().ok_or(ExactError::InexactDivision)?;
        let lead_e = lead_e.clone();
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quot = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return Err(ExactError::InexactDivision);
            }
            let qe: Exponents = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = c / &lead_c;
            let qterm = Poly::monomial(&self.var_refs(), qc, &qe);
            rem = &rem - &(&qterm * divisor);
            quot = &quot + &qterm;
        }
        Ok(quot)
    }

    /// Sylvester resultant with respect to `var`. Both inputs must have
    /// positive degree in `var`.
    pub fn resultant(&self, other: &Poly, var: usize) -> Result<Poly, ExactError> {
        self.check_vars(other);
        let a = self.coeffs_in(var);
        let b = other.coeffs_in(var);
        let m = a.len() - 1;
        let n = b.len() - 1;
        if m == 0 || n == 0 {
            return Err(ExactError::DimensionMismatch(
                "resultant needs positive degree in the eliminated variable".into(),
            ));
        }
        let size = m + n;
        let zero = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        let mut rows = vec![vec![zero; size]; size];
        // coefficients from the highest power down, shifted per row
        for i in 0..n {
            for (k, c) in a.iter().rev().enumerate() {
                rows[i][i + k] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in b.iter().rev().enumerate() {
                rows[n + i][i + k] = c.clone();
            }
        }
        bareiss_determinant(rows)
    }

    /// Terms sorted by descending graded-lex order.
    fn sorted_terms(&self) -> Vec<(&Exponents, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }
}

fn grlex(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl ExactRing for Poly {
    fn zero_like(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }
    fn one_like(&self) -> Self {
        Poly::constant(&self.var_refs(), BigRational::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self, ExactError> {
        self.divide_exact(other)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let factors: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self}; {:?})", self.vars)
    }
}

/// Discriminant of the depressed cubic `z^3 + a2*z + a3`, computed as the
/// Sylvester resultant of the cubic and its `z`-derivative. The sign
/// convention makes the cusp discriminant come out as `4*a2^3 + 27*a3^2`.
pub fn cubic_discriminant(a2: &Poly, a3: &Poly) -> Result<Poly, ExactError> {
    if a2.vars() != a3.vars() {
        return Err(ExactError::VariableMismatch(
            a2.vars().to_vec(),
            a3.vars().to_vec(),
        ));
    }
    let mut z_name = String::from("z");
    while a2.vars().contains(&z_name) {
        z_name.push('_');
    }
    let mut names: Vec<&str> = a2.vars().iter().map(String::as_str).collect();
    names.push(&z_name);
    let zi = names.len() - 1;
    let a2e = a2.with_vars(&names)?;
    let a3e = a3.with_vars(&names)?;
    let z = Poly::var(&names, &z_name);
    let cubic = &(&z.pow(3) + &(&a2e * &z)) + &a3e;
    let deriv = cubic.derivative(zi);
    let res = cubic.resultant(&deriv, zi)?;
    let back: Vec<&str> = a2.vars().iter().map(String::as_str).collect();
    res.with_vars(&back)
}

struct Parser<'a> {
    vars: &'a [&'a str],
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, String> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, String> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.integer()?;
            let n: u32 = n.try_into().map_err(|_| "exponent too large".to_string())?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected a number at {start}"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|e| format!("{e}"))
    }

    fn base(&mut self) -> Result<Poly, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(format!("expected `)` at {}", self.pos));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = BigRational::from_integer(n);
                // `p/q` is read as a single rational literal
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err("division by zero".into());
                    }
                    value /= BigRational::from_integer(d);
                }
                Ok(Poly::constant(self.vars, value))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if !self.vars.contains(&name.as_str()) {
                    return Err(format!("unknown variable `{name}`"));
                }
                Ok(Poly::var(self.vars, &name))
            }
            other => Err(format!("unexpected {other:?} at {}", self.pos)),
        }
    }
}
