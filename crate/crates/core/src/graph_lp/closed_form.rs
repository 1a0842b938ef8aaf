//! Closed forms for the seeds of the binomial algebra of `K_n`.
//!
//! The seed reached from the initial binomial seed along an activation
//! sequence `s = (s_1..s_k)` has cluster `X_rho` in slot `rho` for `rho` not
//! in `s`, and `Y_{s(r)}` in slot `s_r`, where `Y_{s(r)}` is the symbol
//! minted at step `r`. Symbols are identified with engine ids: `Y_{s(r)}`
//! is `X{n+r}`.

use crate::poly::{LaurentPolynomial as Poly, Monomial, Var};

use super::{ActivationSequence, GraphError};

/// Symbol of the variable minted at step `r` (1-based) of a sequence.
pub fn prefix_symbol(n: usize, r: usize) -> Var {
    Var::cluster((n + r) as u32)
}

fn a(l: u32) -> Poly {
    Poly::var(Var::constant(l))
}

fn x(l: u32) -> Poly {
    Poly::var(Var::cluster(l))
}

/// The closed-form polynomials attached to one activation sequence.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    s: ActivationSequence,
    /// `ps[i - 1] = P_{s_i}`.
    ps: Vec<Poly>,
}

impl ClosedForm {
    pub fn new(s: &ActivationSequence) -> Self {
        let mut cf = ClosedForm {
            s: s.clone(),
            ps: vec![Poly::zero(); s.len()],
        };
        let k = s.len();
        for i in (1..=k).rev() {
            cf.ps[i - 1] = if i == k { cf.p_last() } else { cf.p_inner(i) };
        }
        cf
    }

    pub fn sequence(&self) -> &ActivationSequence {
        &self.s
    }

    fn k(&self) -> usize {
        self.s.len()
    }

    fn n(&self) -> usize {
        self.s.n()
    }

    /// `Y_{s(r)}`, with `Y_{s(0)} = Y_{s(k+1)} = 1`.
    pub fn y(&self, r: usize) -> Poly {
        if r == 0 || r > self.k() {
            Poly::one()
        } else {
            Poly::var(prefix_symbol(self.n(), r))
        }
    }

    /// `prod_{r=lo}^{hi} A_{s_r}`, empty when `lo > hi`.
    fn prod_a(&self, lo: usize, hi: usize) -> Poly {
        (lo..=hi).map(|r| a(self.s.get(r))).product()
    }

    /// `prod X_rho` over `rho` outside the sequence, skipping `skip`.
    fn prod_x(&self, skip: Option<u32>) -> Poly {
        (1..=self.n() as u32)
            .filter(|&rho| !self.s.contains(rho) && Some(rho) != skip)
            .map(x)
            .product()
    }

    /// `prod_{r=lo}^{k} P_{s_r}`.
    fn prod_p(&self, lo: usize) -> Poly {
        (lo..=self.k()).map(|r| self.ps[r - 1].clone()).product()
    }

    /// `C_{s_i} = prod_{r=i+2}^{k} Y_{s(r)}^{2^{r-i-1}}`.
    pub fn c(&self, i: usize) -> Monomial {
        Monomial::from_pairs(
            (i + 2..=self.k()).map(|r| (prefix_symbol(self.n(), r), 1i32 << (r - i - 1))),
        )
    }

    fn c_poly(&self, i: usize) -> Poly {
        Poly::monomial(self.c(i))
    }

    fn p_last(&self) -> Poly {
        let k = self.k();
        &(&self.prod_a(1, k - 1) * &self.prod_x(None)) + &(&a(self.s.get(k)) * &self.y(k - 1))
    }

    fn p_inner(&self, i: usize) -> Poly {
        let first = &(&self.prod_a(1, i - 1) * &self.prod_x(None)) * &self.prod_p(i + 1);
        let second = &(&(&a(self.s.get(i)) * &self.y(i - 1)) * &self.y(i + 1)) * &self.c_poly(i);
        &first + &second
    }

    /// `P_{s_i}` for `1 <= i <= k`.
    pub fn p(&self, i: usize) -> &Poly {
        &self.ps[i - 1]
    }

    /// `P_{s_i}` for `i < k` by the second recursion, written through
    /// `E_{s_i}` and `C_{s_{i+1}}`.
    pub fn p_alt(&self, i: usize) -> Poly {
        let base = &(&self.prod_a(1, i - 1) * &self.prod_x(None)) * &self.prod_p(i + 2);
        let lead = &(&(&a(self.s.get(i + 1)) * &self.y(i)) * &self.y(i + 2)) * &self.c_poly(i + 1);
        &(&lead * &base) + &(&a(self.s.get(i)) * &self.e_at(i))
    }

    /// `E_{s_i}` for `1 <= i <= k`.
    pub fn e_at(&self, i: usize) -> Poly {
        if i == self.k() {
            return self.ps[i - 1].clone();
        }
        let sq = &(&self.prod_a(1, i - 1) * &self.prod_x(None)) * &self.prod_p(i + 2);
        &sq.pow(2) + &(&(&self.y(i - 1) * &self.y(i + 1)) * &self.c_poly(i))
    }

    /// Exchange polynomial of slot `l` (1-based vertex).
    pub fn exchange(&self, l: u32) -> Poly {
        match self.s.position(l) {
            Some(i) => self.e_at(i),
            None => {
                let k = self.k();
                &(&self.prod_a(1, k) * &self.prod_x(Some(l))) + &(&a(l) * &self.y(k))
            }
        }
    }

    /// Every exchange polynomial, indexed by slot (0-based), after checking
    /// that both recursions for `P` agree.
    pub fn exchanges(&self) -> Result<Vec<Poly>, GraphError> {
        for i in 1..self.k() {
            if self.p_alt(i) != self.ps[i - 1] {
                return Err(GraphError::SelfCheck(format!(
                    "recursions for P disagree at position {i} of ({})",
                    self.s
                )));
            }
        }
        Ok((1..=self.n() as u32).map(|l| self.exchange(l)).collect())
    }

    /// `F̂_l / F_l`: `1` outside the sequence, `1 / C_{s_i}` for `l = s_i`.
    pub fn hat_ratio(&self, l: u32) -> Monomial {
        match self.s.position(l) {
            Some(i) => self.c(i).inverse(),
            None => Monomial::one(),
        }
    }
}

pub fn closed_form_exchange(s: &ActivationSequence) -> Result<Vec<Poly>, GraphError> {
    ClosedForm::new(s).exchanges()
}

pub fn closed_form_hat_ratio(s: &ActivationSequence, l: u32) -> Monomial {
    ClosedForm::new(s).hat_ratio(l)
}

/// The last cluster variable of `s` in the initial variables:
/// `[sum_i (prod_{j != i} A_{s_j})(prod_{j != s_i} X_j) + prod_i A_{s_i}] / prod_i X_{s_i}`.
pub fn closed_form_cluster_variable(s: &ActivationSequence) -> Result<Poly, GraphError> {
    if s.is_empty() {
        return Err(GraphError::EmptySequence);
    }
    let n = s.n() as u32;
    let e = s.entries();
    let mut num: Poly = e.iter().map(|&l| a(l)).product();
    for (i, &si) in e.iter().enumerate() {
        let pa: Poly = e
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &l)| a(l))
            .product();
        let px: Poly = (1..=n).filter(|&j| j != si).map(x).product();
        num += &(&pa * &px);
    }
    let den = Monomial::from_pairs(e.iter().map(|&l| (Var::cluster(l), -1)));
    Ok(num.mul_monomial(&den))
}

/// Multiplicity of `E_{s_j}` in `E_{s_i}` with `Y_{s(j)}` set to zero.
pub fn vanishing_multiplicity(cf: &ClosedForm, i: usize, j: usize) -> Result<u32, GraphError> {
    let y = prefix_symbol(cf.n(), j);
    let reduced = cf.e_at(i).set_zero(y)?;
    Ok(reduced.factor_multiplicity(&cf.e_at(j))?)
}

/// For `s` of length `k + 1` with last entry `sigma`, compares
/// `Y_s^(2^(i+1)-1) * prod_{r=0}^{i} P^{s(k)}_{s_{k-r}}` under
/// `X_sigma <- E^s_sigma / Y_s` with `prod_{r=0}^{i} P^s_{s_{k-r}}`.
/// Valid for `0 <= i <= k - 1`.
pub fn prefix_substitution_holds(s: &ActivationSequence, i: usize) -> Result<bool, GraphError> {
    let k = s.len().checked_sub(1).ok_or(GraphError::EmptySequence)?;
    if i >= k {
        return Err(GraphError::Parse(format!("index {i} out of range 0..{k}")));
    }
    let sigma = s.get(k + 1);
    let short = ClosedForm::new(&s.prefix(k));
    let long = ClosedForm::new(s);
    let y_s = long.y(k + 1);
    let lhs: Poly = (0..=i).map(|r| short.p(k - r).clone()).product();
    let lhs = &lhs * &y_s.pow((1u32 << (i + 1)) - 1);
    let value = crate::poly::RationalFunction::new(long.exchange(sigma), y_s)?;
    let sub = lhs.substitute(Var::cluster(sigma), &value)?;
    let rhs: Poly = (0..=i).map(|r| long.p(k - r).clone()).product();
    Ok(sub.to_laurent().is_some_and(|v| v == rhs))
}
