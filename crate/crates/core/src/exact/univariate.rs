use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rational roots of a univariate polynomial together with whatever is left
/// once they are divided out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSplit {
    /// Distinct rational roots in ascending order, with multiplicities.
    pub roots: Vec<(BigRational, u32)>,
    /// Degree of the cofactor that has no rational roots.
    pub residual_degree: usize,
}

impl RootSplit {
    pub fn splits_completely(&self) -> bool {
        self.residual_degree == 0
    }
}

fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn eval(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter()
        .rev()
        .fold(BigRational::zero(), |acc, a| acc * x + a)
}

/// Synthetic division by `(t - r)`; assumes `r` is a root.
fn deflate(c: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let n = c.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for i in (0..n).rev() {
        carry = &c[i + 1] + carry * r;
        q[i] = carry.clone();
    }
    q
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Finds all rational roots of `sum c[i] t^i` (lowest power first) by the
/// rational root test. The zero polynomial has no well-defined roots and
/// is reported as having none with residual degree 0.
pub fn rational_roots(coeffs: &[BigRational]) -> RootSplit {
    let mut c = trim(coeffs.to_vec());
    if c.len() <= 1 {
        return RootSplit {
            roots: Vec::new(),
            residual_degree: 0,
        };
    }
    let mut roots: Vec<(BigRational, u32)> = Vec::new();

    let zero_mult = c.iter().take_while(|a| a.is_zero()).count();
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult as u32));
        c.drain(..zero_mult);
    }

    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = c
            .iter()
            .map(|a| (a * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let ps = positive_divisors(&ints[0]);
        let qs = positive_divisors(ints.last().unwrap());
        let mut candidates: Vec<BigRational> = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = BigRational::new(p.clone(), q.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let mut m = 0u32;
            while c.len() > 1 && eval(&c, &r).is_zero() {
                c = deflate(&c, &r);
                m += 1;
            }
            if m > 0 {
                roots.push((r, m));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    RootSplit {
        roots,
        residual_degree: c.len() - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(c: &[i64]) -> Vec<BigRational> {
        c.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn multiple_roots() {
        // t^2 (t - 1)^3 (2t + 3)
        let mut c = poly(&[0, 0, 1]);
        for factor in [
            poly(&[-1, 1]),
            poly(&[-1, 1]),
            poly(&[-1, 1]),
            poly(&[3, 2]),
        ] {
            let mut next = vec![rat(0, 1); c.len() + factor.len() - 1];
            for (i, a) in c.iter().enumerate() {
                for (j, b) in factor.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            c = next;
        }
        let split = rational_roots(&c);
        assert_eq!(
            split.roots,
            vec![(rat(-3, 2), 1), (rat(0, 1), 2), (rat(1, 1), 3)]
        );
        assert!(split.splits_completely());
    }

    #[test]
    fn irrational_part_is_reported() {
        // (t^2 + 1)(t - 2)
        let split = rational_roots(&poly(&[-2, 1, -2, 1]));
        assert_eq!(split.roots, vec![(rat(2, 1), 1)]);
        assert_eq!(split.residual_degree, 2);
    }

    #[test]
    fn rational_coefficients() {
        // t^2 - 1/4
        let split = rational_roots(&[rat(-1, 4), rat(0, 1), rat(1, 1)]);
        assert_eq!(split.roots, vec![(rat(-1, 2), 1), (rat(1, 2), 1)]);
    }

    #[test]
    fn constants_have_no_roots() {
        assert_eq!(rational_roots(&poly(&[5])).roots, vec![]);
        assert_eq!(rational_roots(&poly(&[])).residual_degree, 0);
    }
}
