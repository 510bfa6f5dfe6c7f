//! Scalar identities behind the left/right product comparison and the
//! generation argument for induced modules.

use crate::exact::{binom_expand, binomial, Rational, TruncatedLaurent};

/// `sum_{i<=m} C(-n-1,i) (1+x)^{n+1} x^{-n-i-1} - sum_{i<=n} C(-m-1,i) (-1)^{m+i} (1+x)^i x^{-m-i-1}`
/// as an exact Laurent polynomial.
pub fn left_right_kernel_difference(m: i64, n: i64) -> TruncatedLaurent<Rational> {
    let mut total = TruncatedLaurent::zero();
    for i in 0..=m {
        let term = binom_expand(n + 1, n + 1)
            .shift(-n - i - 1)
            .scaled(&binomial(-n - 1, i));
        total = total.add(&term);
    }
    for i in 0..=n {
        let c = &binomial(-m - 1, i) * &Rational::sign_pow(m + i);
        let term = binom_expand(i, i).shift(-m - i - 1).scaled(&-c);
        total = total.add(&term);
    }
    total
}

/// Whether the kernel difference equals the constant `1`.
pub fn kernel_difference_is_one(m: i64, n: i64) -> bool {
    left_right_kernel_difference(m, n) == TruncatedLaurent::monomial(Rational::ONE, 0)
}

/// `sum_{j+k=r} C(a, j) C(b, k)`.
pub fn convolution(a: i64, b: i64, r: i64) -> Rational {
    let mut s = Rational::ZERO;
    for j in 0..=r {
        s += &(&binomial(a, j) * &binomial(b, r - j));
    }
    s
}

/// Checks `sum_{j+k=r} C(m+w, j) C(n-m-w, k) = delta_{r,n}` for
/// `n <= r <= r_max`. Returns the first failing `r`.
pub fn vandermonde_collapse(m: i64, n: i64, w: i64, r_max: i64) -> Option<i64> {
    (n..=r_max).find(|&r| {
        let expected = if r == n { Rational::ONE } else { Rational::ZERO };
        convolution(m + w, n - m - w, r) != expected
    })
}
