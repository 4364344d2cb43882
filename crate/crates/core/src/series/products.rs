//! Standard product builders over the truncated ring.

use crate::error::Error;
use crate::halfexp::HalfExp;
use crate::scalar::Scalar;
use crate::series::{ALaurent, LaurentPoly, PSeries, QSeries, ShiftedQSeries, Window};

/// One factor `(1 - p^{p_exp} q^{q_exp})^{exponent}` of an Euler product.
#[derive(Debug, Clone, Copy)]
pub struct EulerFactor {
    pub p_exp: HalfExp,
    pub q_exp: u32,
    pub exponent: i64,
}

impl EulerFactor {
    pub fn new(p_exp: HalfExp, q_exp: u32, exponent: i64) -> Self {
        EulerFactor {
            p_exp,
            q_exp,
            exponent,
        }
    }
}

/// Generalized binomial coefficients of `(1 - x)^e`: the coefficient of
/// `x^j` is `(-1)^j binom(e, j)`, exact for any integer `e`.
fn binomial_coeffs<C: Scalar>(e: i64, jmax: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(jmax + 1);
    let mut c = C::one();
    out.push(c.clone());
    for j in 1..=jmax as i64 {
        c = c * C::ratio(-(e - j + 1), j);
        out.push(c.clone());
        if e >= 0 && j >= e {
            // remaining coefficients are zero
            for _ in (j as usize + 1)..=jmax {
                out.push(C::zero());
            }
            break;
        }
    }
    while out.len() <= jmax {
        out.push(C::zero());
    }
    out
}

/// `(1 - p^a)^e` as a `PSeries` valid up to `top` (and down to the lowest
/// term of a finite expansion).
fn factor_pseries<C: Scalar>(
    p_exp: HalfExp,
    exponent: i64,
    top: HalfExp,
) -> Result<PSeries<C>, Error> {
    let a2 = p_exp.twice();
    if a2 == 0 {
        return Err(Error::NonUnitFactor);
    }
    if a2 < 0 && exponent < 0 {
        return Err(Error::NonTerminatingFactor {
            pexp: p_exp,
            exponent,
        });
    }
    if a2 > 0 {
        // ascending expansion, finite within [0, top]
        let jmax = if top.twice() >= 0 {
            (top.twice() / a2) as usize
        } else {
            0
        };
        let coeffs = binomial_coeffs::<C>(exponent, jmax);
        let win = Window::new(HalfExp::ZERO, top.max(HalfExp::ZERO))?;
        PSeries::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(j, c)| (p_exp * (j as i64), c)),
            win,
        )
    } else {
        // finite descending polynomial: exponent >= 0
        let jmax = exponent as usize;
        let coeffs = binomial_coeffs::<C>(exponent, jmax);
        let lo = p_exp * (jmax as i64);
        let win = Window::new(lo.min(HalfExp::ZERO), top.max(HalfExp::ZERO))?;
        PSeries::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(j, c)| (p_exp * (j as i64), c)),
            win,
        )
    }
}

/// Truncated expansion of `prod (1 - p^{a} q^{b})^{e}` over the listed
/// factors on the given starting window.
///
/// Factors that cannot contribute within the truncation are skipped. The
/// windows of the result's entries are the exactly derived ones; factors
/// with negative `p`-powers deepen and lower them per `q`-order.
pub fn euler_product<C: Scalar>(
    factors: &[EulerFactor],
    order: usize,
    window: Window,
) -> Result<QSeries<C>, Error> {
    // Work with tight lower bounds (the unit is zero below p^0); loose
    // declared bounds would needlessly degrade the derived product tops.
    let tight = Window::new(HalfExp::ZERO, window.hi().max(HalfExp::ZERO))?;
    let mut acc = QSeries::one(order, tight);
    for f in factors {
        if f.exponent == 0 {
            continue;
        }
        if f.q_exp == 0 {
            if f.p_exp == HalfExp::ZERO {
                if f.exponent < 0 {
                    return Err(Error::NonUnitFactor);
                }
                // (1 - 1)^e = 0 for e > 0: the whole product vanishes
                return Ok(QSeries::zero(order, window));
            }
            if f.p_exp > HalfExp::ZERO && f.p_exp > window.hi() && f.exponent < 0 {
                continue; // cannot contribute below the top
            }
            // widest span any entry needs
            let span = acc
                .coeffs()
                .iter()
                .map(|c| c.hi() - c.lo())
                .max()
                .unwrap_or(HalfExp::ZERO);
            let fp = factor_pseries::<C>(f.p_exp, f.exponent, span)?;
            acc = acc.scale_ps(&fp);
        } else {
            if f.q_exp as usize > order {
                continue;
            }
            let jmax = order / f.q_exp as usize;
            let coeffs = binomial_coeffs::<C>(f.exponent, jmax);
            let mut entries: Vec<PSeries<C>> = Vec::with_capacity(order + 1);
            for d in 0..=order {
                let mut e: Option<PSeries<C>> = None;
                for (j, c) in coeffs.iter().enumerate() {
                    let dj = j * f.q_exp as usize;
                    if dj > d {
                        break;
                    }
                    if c.is_zero() && j > 0 {
                        continue;
                    }
                    let term = acc.coeff(d - dj).mul_monomial(f.p_exp * (j as i64), c);
                    e = Some(match e {
                        Some(x) => x.add(&term),
                        None => term,
                    });
                }
                entries.push(e.expect("j = 0 always contributes"));
            }
            acc = QSeries::new(entries);
        }
    }
    // Lower the declared bottoms to cover the requested window (always
    // sound; tops keep their exactly derived values).
    let lowered = acc
        .coeffs()
        .iter()
        .map(|c| {
            let lo = c.lo().min(window.lo());
            c.restrict(Window::new(lo, c.hi()).expect("lo <= hi"))
                .expect("lowering a bottom cannot fail")
        })
        .collect();
    Ok(QSeries::new(lowered))
}

/// MacMahon's function `M(p) = prod_m (1 - p^m)^{-m}` truncated on a window.
pub fn macmahon_p<C: Scalar>(window: Window) -> Result<PSeries<C>, Error> {
    let top = window.hi().floor().max(0);
    let factors: Vec<EulerFactor> = (1..=top)
        .map(|m| EulerFactor::new(HalfExp::int(m), 0, -m))
        .collect();
    Ok(euler_product::<C>(&factors, 0, window)?.coeff(0).clone())
}

/// The two-variable `M(p, q^s) = prod_m (1 - p^m q^s)^{-m}` truncated.
pub fn macmahon_pq<C: Scalar>(
    s: u32,
    order: usize,
    window: Window,
) -> Result<QSeries<C>, Error> {
    let top = window.hi().floor().max(0);
    let factors: Vec<EulerFactor> = (1..=top)
        .map(|m| EulerFactor::new(HalfExp::int(m), s, -m))
        .collect();
    euler_product::<C>(&factors, order, window)
}

/// `prod_{d>=1} (1 - q^d)^{-1}`: the partition generating function.
pub fn partition_gf<C: Scalar>(order: usize, window: Window) -> Result<QSeries<C>, Error> {
    let factors: Vec<EulerFactor> = (1..=order as u32)
        .map(|d| EulerFactor::new(HalfExp::ZERO, d, -1))
        .collect();
    euler_product::<C>(&factors, order, window)
}

/// `prod_{m>=1} (1 - q^m)` (the eta product without its prefactor).
pub fn euler_phi_q<C: Scalar>(order: usize, window: Window) -> Result<QSeries<C>, Error> {
    let factors: Vec<EulerFactor> = (1..=order as u32)
        .map(|d| EulerFactor::new(HalfExp::ZERO, d, 1))
        .collect();
    euler_product::<C>(&factors, order, window)
}

/// `eta(q) = q^(1/24) prod (1 - q^m)` with the prefactor kept symbolic.
pub fn eta_series<C: Scalar>(
    order: usize,
    window: Window,
) -> Result<ShiftedQSeries<C>, Error> {
    Ok(ShiftedQSeries::new(1, euler_phi_q(order, window)?))
}

/// The theta function in product form:
/// `(p^(1/2) - p^(-1/2)) prod_m (1-p q^m)(1-p^{-1} q^m)/(1-q^m)^2`.
///
/// Requires the window to contain `[-order - 1/2, order + 1/2]`, the
/// exact support reach of the truncation.
pub fn theta_series<C: Scalar>(order: usize, window: Window) -> Result<QSeries<C>, Error> {
    let need_lo = HalfExp::int_plus_half(-(order as i64) - 1);
    let need_hi = HalfExp::int_plus_half(order as i64);
    if window.lo() > need_lo || window.hi() < need_hi {
        return Err(Error::WindowTooSmall {
            want_lo: need_lo,
            want_hi: need_hi,
            have_lo: window.lo(),
            have_hi: window.hi(),
        });
    }
    // pad the top (the p^{-1} factors cost up to `order` of it) and keep
    // the bottom tight; the requested bottom is declared only at the end
    let inner = Window::new(HalfExp::ZERO, window.hi() + HalfExp::int(order as i64 + 1))?;
    let mut factors = Vec::new();
    for m in 1..=order as u32 {
        factors.push(EulerFactor::new(HalfExp::int(1), m, 1));
        factors.push(EulerFactor::new(HalfExp::int(-1), m, 1));
        factors.push(EulerFactor::new(HalfExp::ZERO, m, -2));
    }
    let prod = euler_product::<C>(&factors, order, inner)?;
    let prefactor = PSeries::from_terms(
        [
            (HalfExp::int_plus_half(0), C::one()),
            (HalfExp::int_plus_half(-1), -C::one()),
        ],
        Window::new(HalfExp::int_plus_half(-1), inner.hi())?,
    )?;
    prod.scale_ps(&prefactor).restrict_all(window)
}

/// The sum side of the theta triple product after clearing the eta cube:
/// `prod(1-q^m)^3 * Theta = sum_n (-1)^n q^{n(n+1)/2} p^{n+1/2}`.
pub fn theta_sum_side<C: Scalar>(order: usize, window: Window) -> Result<QSeries<C>, Error> {
    QSeries::from_fn(order, |d| {
        let mut terms = Vec::new();
        for n in -(order as i64 + 1)..=(order as i64 + 1) {
            if n * (n + 1) / 2 == d as i64 {
                let c = if n.rem_euclid(2) == 0 {
                    C::one()
                } else {
                    -C::one()
                };
                terms.push((HalfExp::int_plus_half(n), c));
            }
        }
        PSeries::from_terms(terms, window)
    })
}

/// Both sides of the `a`-graded Jacobi triple product
/// `prod_m (1-q^m a^{-1})(1-q^{m-1} a)(1-q^m) = sum_n q^{binom(n,2)} (-a)^n`,
/// with an equality verdict per `a`-power.
#[derive(Debug, Clone)]
pub struct TripleProduct<C: Scalar> {
    pub product: ALaurent<QSeries<C>>,
    pub sum: ALaurent<QSeries<C>>,
    /// `a`-exponents where the two sides disagree (empty means PASS).
    pub mismatched: Vec<i64>,
}

impl<C: Scalar> TripleProduct<C> {
    pub fn passes(&self) -> bool {
        self.mismatched.is_empty()
    }
}

/// Multiply an `a`-graded collection by `(1 - c a^{shift} q^{qpow})`.
fn mul_a_binomial<C: Scalar>(
    al: &ALaurent<QSeries<C>>,
    shift: i64,
    qpow: usize,
    c: &C,
    order: usize,
    window: Window,
) -> ALaurent<QSeries<C>> {
    let mut out: ALaurent<QSeries<C>> = ALaurent::new();
    let zero = QSeries::zero(order, window);
    let exps: std::collections::BTreeSet<i64> = al
        .exponents()
        .chain(al.exponents().map(|r| r + shift))
        .collect();
    for r in exps {
        let base = al.get(r).unwrap_or(&zero);
        let shifted = al.get(r - shift).unwrap_or(&zero);
        let term = shifted.mul_q_monomial(qpow, HalfExp::ZERO, &(-c.clone()));
        let v = base.add(&term).expect("equal orders");
        if !v.is_zero() {
            out.insert(r, v);
        }
    }
    out
}

pub fn jacobi_triple_product_a<C: Scalar>(order: usize, r_bound: i64) -> TripleProduct<C> {
    let window = Window::ints(0, 0);
    let mut product: ALaurent<QSeries<C>> = ALaurent::new();
    product.insert(0, QSeries::one(order, window));
    for m in 1..=order {
        product = mul_a_binomial(&product, -1, m, &C::one(), order, window);
        product = mul_a_binomial(&product, 1, m - 1, &C::one(), order, window);
        product = mul_a_binomial(&product, 0, m, &C::one(), order, window);
    }
    // the a-factor of the (order+1)-st triple still lands inside the
    // truncation: (1 - q^{order} a)
    product = mul_a_binomial(&product, 1, order, &C::one(), order, window);
    let mut sum: ALaurent<QSeries<C>> = ALaurent::new();
    for n in -r_bound..=r_bound {
        let qp = n * (n - 1) / 2;
        if qp as usize <= order {
            let c = if n.rem_euclid(2) == 0 {
                C::one()
            } else {
                -C::one()
            };
            let s =
                QSeries::one(order, window).mul_q_monomial(qp as usize, HalfExp::ZERO, &c);
            sum.insert(n, s);
        }
    }
    let zero = QSeries::zero(order, window);
    let mut mismatched = Vec::new();
    let exps: std::collections::BTreeSet<i64> = product
        .exponents()
        .chain(sum.exponents())
        .filter(|&r| -r_bound <= r && r <= r_bound)
        .collect();
    for r in exps {
        let a = product.get(r).unwrap_or(&zero);
        let b = sum.get(r).unwrap_or(&zero);
        if a != b {
            mismatched.push(r);
        }
    }
    // any product component outside the bound must vanish mod q^{order+1}
    for (r, s) in product.iter() {
        if (r < -r_bound || r > r_bound) && !s.is_zero() {
            mismatched.push(r);
        }
    }
    TripleProduct {
        product: product.restrict_window(r_bound),
        sum,
        mismatched,
    }
}

/// `(p^(1/2) - p^(-1/2))` as a Laurent polynomial.
pub fn sqrt_p_minus_inv<C: Scalar>() -> LaurentPoly<C> {
    LaurentPoly::from_terms([
        (HalfExp::int_plus_half(0), C::one()),
        (HalfExp::int_plus_half(-1), -C::one()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, Rat};

    #[test]
    fn macmahon_coefficients() {
        // plane partition counts 1, 1, 3, 6, 13, 24, 48
        let m = macmahon_p::<Rat>(Window::ints(0, 6)).unwrap();
        let expect = [1, 1, 3, 6, 13, 24, 48];
        for (n, &c) in expect.iter().enumerate() {
            assert_eq!(m.coeff(HalfExp::int(n as i64)), rat_int(c), "p^{n}");
        }
    }

    #[test]
    fn macmahon_times_one_minus_p() {
        let w = Window::ints(0, 6);
        let m = macmahon_p::<Rat>(w).unwrap();
        let f = PSeries::from_terms(
            [(HalfExp::ZERO, rat_int(1)), (HalfExp::int(1), rat_int(-1))],
            w,
        )
        .unwrap();
        let prod = m.mul(&f);
        let expect = [1, 0, 2, 3, 7, 11, 24];
        for (n, &c) in expect.iter().enumerate() {
            assert_eq!(prod.coeff(HalfExp::int(n as i64)), rat_int(c), "p^{n}");
        }
    }

    #[test]
    fn macmahon_inverse_by_triangular_solve() {
        // Independent oracle: solve sum_k M_k b_{n-k} = [n = 0] against
        // M = 1, 1, 3, 6, 13; gives b = 1, -1, -2, -1, 0. Cross-checked
        // against prod (1-p^m)^m = 1 - p - 2p^2 - p^3 + 0p^4 + ...
        let m = [1i64, 1, 3, 6, 13];
        let mut b = vec![rat_int(0); 5];
        b[0] = rat_int(1);
        for n in 1..5 {
            let mut acc = rat_int(0);
            for k in 1..=n {
                acc += rat_int(m[k]) * b[n - k].clone();
            }
            b[n] = -acc;
        }
        let expect: Vec<Rat> = [1, -1, -2, -1, 0].iter().map(|&x| rat_int(x)).collect();
        assert_eq!(b, expect);

        let w = Window::ints(0, 4);
        let inv = macmahon_p::<Rat>(w).unwrap().invert().unwrap();
        for (n, c) in expect.iter().enumerate() {
            assert_eq!(&inv.coeff(HalfExp::int(n as i64)), c, "p^{n}");
        }
        // direct product form of the inverse
        let factors: Vec<EulerFactor> = (1..=4)
            .map(|k| EulerFactor::new(HalfExp::int(k), 0, k))
            .collect();
        let direct = euler_product::<Rat>(&factors, 0, w).unwrap();
        assert_eq!(*direct.coeff(0), inv);
    }

    #[test]
    fn partition_counts() {
        let gf = partition_gf::<Rat>(6, Window::ints(0, 0)).unwrap();
        let expect = [1, 1, 2, 3, 5, 7, 11];
        for (n, &c) in expect.iter().enumerate() {
            assert_eq!(gf.coeff(n).coeff(HalfExp::ZERO), rat_int(c), "q^{n}");
        }
    }

    #[test]
    fn macmahon_pq_first_order() {
        // coefficient of q^1 in M(p, q) is sum_m m p^m
        let w = Window::ints(0, 8);
        let m = macmahon_pq::<Rat>(1, 3, w).unwrap();
        assert_eq!(*m.coeff(0), PSeries::one(w));
        for k in 1..=8 {
            assert_eq!(m.coeff(1).coeff(HalfExp::int(k)), rat_int(k));
        }
    }

    #[test]
    fn theta_q0_and_antisymmetry() {
        let n = 4;
        let w = Window::ints(-(n as i64) - 1, n as i64 + 1);
        let th = theta_series::<Rat>(n, w).unwrap();
        // q^0 coefficient is p^(1/2) - p^(-1/2)
        let q0 = th.coeff(0);
        assert_eq!(q0.coeff(HalfExp::int_plus_half(0)), rat_int(1));
        assert_eq!(q0.coeff(HalfExp::int_plus_half(-1)), rat_int(-1));
        assert_eq!(q0.num_terms(), 2);
        // Theta(p) = -Theta(p^{-1})
        let mirrored = th.substitute_p_inverse().neg();
        assert_eq!(th.restrict_all(w).unwrap(), mirrored.restrict_all(w).unwrap());
        // window too small is an error
        assert!(theta_series::<Rat>(n, Window::ints(-2, 2)).is_err());
    }

    #[test]
    fn theta_triple_product_sum_side() {
        let n = 6;
        let w = Window::new(
            HalfExp::int_plus_half(-(n as i64) - 1),
            HalfExp::int_plus_half(n as i64),
        )
        .unwrap();
        let th = theta_series::<Rat>(n, w).unwrap();
        let phi = euler_phi_q::<Rat>(n, w).unwrap();
        let phi3 = phi.mul(&phi).unwrap().mul(&phi).unwrap();
        let lhs = phi3.mul(&th).unwrap();
        let rhs = theta_sum_side::<Rat>(n, w).unwrap();
        assert_eq!(lhs.mismatches_up_to(&rhs, w.hi()), vec![]);
    }

    #[test]
    fn triple_product_a_graded() {
        let tp = jacobi_triple_product_a::<Rat>(10, 6);
        assert!(tp.passes(), "mismatched a-powers: {:?}", tp.mismatched);
        // a^0 coefficient is 1 to all orders
        let a0 = tp.product.get(0).unwrap();
        assert_eq!(*a0, QSeries::one(10, Window::ints(0, 0)));
        // a^1 coefficient is -1, a^2 coefficient is q
        let a1 = tp.product.get(1).unwrap();
        assert_eq!(a1.coeff(0).coeff(HalfExp::ZERO), rat_int(-1));
        let a2 = tp.product.get(2).unwrap();
        assert_eq!(a2.coeff(0).coeff(HalfExp::ZERO), rat_int(0));
        assert_eq!(a2.coeff(1).coeff(HalfExp::ZERO), rat_int(1));
    }

    #[test]
    fn non_unit_factor_is_an_error() {
        let f = [EulerFactor::new(HalfExp::ZERO, 0, -1)];
        assert!(matches!(
            euler_product::<Rat>(&f, 2, Window::ints(0, 2)),
            Err(Error::NonUnitFactor)
        ));
    }
}
