use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// The two kinds of indeterminates the engine works with.
///
/// `Constant` variables generate the coefficient ring `Z[A1..An]` and never
/// carry negative exponents. `Cluster` variables are seed symbols and may be
/// inverted in Laurent context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarClass {
    Constant,
    Cluster,
}

/// A variable reference. The derived order is the global variable order:
/// every constant sorts below every cluster symbol, and within a class the
/// index (creation order) decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub class: VarClass,
    pub index: u32,
}

impl Var {
    pub const fn constant(index: u32) -> Self {
        Var {
            class: VarClass::Constant,
            index,
        }
    }

    pub const fn cluster(index: u32) -> Self {
        Var {
            class: VarClass::Cluster,
            index,
        }
    }

    pub fn is_cluster(self) -> bool {
        self.class == VarClass::Cluster
    }

    pub fn is_constant(self) -> bool {
        self.class == VarClass::Constant
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            VarClass::Constant => write!(f, "A{}", self.index),
            VarClass::Cluster => write!(f, "X{}", self.index),
        }
    }
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs, zero exponents
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    // cached total degree; the graded order compares it first
    deg: i64,
    exps: Exps,
}

type Exps = SmallVec<[(Var, i32); 10]>;

fn add_exp(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("exponent overflow")
}

fn sub_exp(a: i32, b: i32) -> i32 {
    a.checked_sub(b).expect("exponent overflow")
}

impl Monomial {
    fn from_exps(exps: Exps) -> Self {
        Monomial {
            deg: exps.iter().map(|p| p.1 as i64).sum(),
            exps,
        }
    }

    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut exps = SmallVec::new();
        if e != 0 {
            exps.push((v, e));
        }
        Monomial::from_exps(exps)
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut v: Vec<(Var, i32)> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut exps: Exps = SmallVec::new();
        for (var, e) in v {
            match exps.last_mut() {
                Some(last) if last.0 == var => last.1 = add_exp(last.1, e),
                _ => exps.push((var, e)),
            }
        }
        exps.retain(|p| p.1 != 0);
        Monomial::from_exps(exps)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Var, i32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|p| p.0)
    }

    pub fn exponent(&self, v: Var) -> i32 {
        match self.exps.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.deg
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|p| p.1 >= 0)
    }

    /// True when the monomial only involves cluster symbols.
    pub fn is_cluster_only(&self) -> bool {
        self.exps.iter().all(|p| p.0.is_cluster())
    }

    fn merge(&self, other: &Monomial, op: fn(i32, i32) -> i32) -> Monomial {
        let mut exps = SmallVec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exps, &other.exps);
        while i < a.len() || j < b.len() {
            let (var, e) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, op(a[i - 1].1, 0))
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, op(0, b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, op(a[i - 1].1, b[j - 1].1))
            };
            if e != 0 {
                exps.push((var, e));
            }
        }
        Monomial::from_exps(exps)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, add_exp)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, sub_exp)
    }

    /// Componentwise minimum, with absent variables counting as exponent 0.
    pub fn gcd_with(&self, other: &Monomial) -> Monomial {
        self.merge(other, std::cmp::min)
    }

    pub fn pow(&self, e: i32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .filter(|_| e != 0)
            .map(|&(v, x)| (v, x.checked_mul(e).expect("exponent overflow")))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// Polynomial divisibility: every exponent of `self` is at most the
    /// matching exponent of `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// Drops every variable accepted by `drop`.
    pub fn without(&self, drop: impl Fn(Var) -> bool) -> Monomial {
        Monomial::from_exps(self.exps.iter().copied().filter(|p| !drop(p.0)).collect())
    }

    /// Keeps only the cluster-symbol part.
    pub fn cluster_part(&self) -> Monomial {
        self.without(|v| !v.is_cluster())
    }

    pub(crate) fn map_vars(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// largest variable where the two monomials differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 || j > 0 {
            let (ea, eb) = if j == 0 || (i > 0 && a[i - 1].0 > b[j - 1].0) {
                i -= 1;
                (a[i].1, 0)
            } else if i == 0 || b[j - 1].0 > a[i - 1].0 {
                j -= 1;
                (0, b[j].1)
            } else {
                i -= 1;
                j -= 1;
                (a[i].1, b[j].1)
            };
            match ea.cmp(&eb) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: Var = Var::constant(1);
    const A2: Var = Var::constant(2);
    const X1: Var = Var::cluster(1);
    const X2: Var = Var::cluster(2);

    #[test]
    fn variable_order_puts_constants_first() {
        assert!(A1 < A2);
        assert!(A2 < X1);
        assert!(X1 < X2);
    }

    #[test]
    fn grlex_compares_degree_then_largest_variable() {
        let x2 = Monomial::var(X2);
        let a1sq = Monomial::var_pow(A1, 2);
        let x1 = Monomial::var(X1);
        assert!(a1sq > x2);
        assert!(x2 > x1);
        assert!(x1 > Monomial::var(A2));
        assert!(Monomial::one() < Monomial::var(A1));
        // X1^-1 * X2 has degree 0, same as 1; X2 exponent decides.
        let m = Monomial::from_pairs([(X1, -1), (X2, 1)]);
        assert!(m > Monomial::one());
    }

    #[test]
    fn mul_div_cancel() {
        let a = Monomial::from_pairs([(A1, 1), (X1, 2)]);
        let b = Monomial::from_pairs([(X1, 2), (X2, -1)]);
        let p = a.mul(&b);
        assert_eq!(p.exponent(X1), 4);
        assert_eq!(p.div(&b), a);
        assert!(a.div(&a).is_one());
    }

    #[test]
    fn from_pairs_merges_and_drops_zero() {
        let m = Monomial::from_pairs([(X1, 2), (A1, 1), (X1, -2)]);
        assert_eq!(m, Monomial::var(A1));
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn exponent_overflow_is_caught() {
        Monomial::var_pow(X1, i32::MAX).mul(&Monomial::var(X1));
    }
}
