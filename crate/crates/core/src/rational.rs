//! Exact rational scalars.

/// Exact rational number used for every vertex value, edge value and angle.
pub type Rational = num_rational::Ratio<i128>;

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

/// `x mod m` with the result in `[0, m)`. `m` must be positive.
pub fn rem_euclid(x: Rational, m: Rational) -> Rational {
    let q = (x / m).floor();
    x - q * m
}

/// Signed representative of `x mod m` in `[-m/2, m/2)`.
pub fn short_rem(x: Rational, m: Rational) -> Rational {
    let half = m / int(2);
    rem_euclid(x + half, m) - half
}

/// True when `x` is an integer multiple of `m`.
pub fn is_multiple_of(x: Rational, m: Rational) -> bool {
    (x / m).is_integer()
}

pub fn midpoint(a: Rational, b: Rational) -> Rational {
    (a + b) / int(2)
}
