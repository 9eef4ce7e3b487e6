//! Numerical constants of the explicit bounds.
//!
//! Every constant is stored once, as the exact decimal string it is quoted
//! with, and parsed into an `f64` the first time [`Constants::standard`] is
//! called. Formulas read constants from a [`Constants`] value and never
//! retype a literal.

use std::sync::LazyLock;

macro_rules! constants {
    ($( $(#[$meta:meta])* $name:ident = $lit:literal; )*) => {
        /// The full set of numerical constants used by the bounds.
        #[derive(Debug, Clone, PartialEq)]
        pub struct Constants {
            $( $(#[$meta])* pub $name: f64, )*
        }

        /// `(name, decimal)` pairs in declaration order.
        pub const DECIMALS: &[(&str, &str)] = &[ $( (stringify!($name), $lit), )* ];

        impl Constants {
            fn parse_all() -> Self {
                Constants {
                    $( $name: $lit.parse().expect(concat!("bad decimal for ", stringify!($name))), )*
                }
            }

            /// Overwrite a constant by name. Returns `false` for unknown names.
            pub fn set(&mut self, name: &str, value: f64) -> bool {
                match name {
                    $( stringify!($name) => { self.$name = value; true } )*
                    _ => false,
                }
            }

            /// Look a constant up by name.
            pub fn get(&self, name: &str) -> Option<f64> {
                match name {
                    $( stringify!($name) => Some(self.$name), )*
                    _ => None,
                }
            }
        }
    };
}

constants! {
    // zero-sum bound, |gamma| < T
    alpha = "3.9792";
    beta = "-1.4969";
    gamma = "25.5362";

    // |r_K| bound
    rk_disc = "1.0155";
    rk_degree = "2.1042";
    rk_const = "8.3423";
    e_real_rational = "4.4002";
    e_imag_quadratic = "0.6931";

    // sum over |gamma| <= 5 of 1/|rho|
    low_zero_disc = "1.0111";
    low_zero_degree = "1.6550";
    low_zero_const = "7.0320";

    // zero counting
    count_w = "1.4427";
    count_n = "8.9250";
    count_c = "8.6542";
    // tail of 1/|rho|^2
    tail_w = "2.8854";
    tail_n = "18.6019";
    tail_c = "17.3084";

    // general bound, W_K(T) group
    w_t1_k2 = "1.4427";
    w_t1_k1 = "3";
    w_t1_k0 = "11.5416";
    w_t2_k1 = "0.5915";
    /// Rounded value used in the closed-form coefficients.
    w_t2_k0 = "4.3282";
    /// Value used in the one-sided (h > 0 and h < 0) estimates.
    w_t2_k0_proof = "4.3281";
    // n_K group
    n_t1_k2 = "8.9250";
    n_t1_k1 = "3";
    n_t1_k0 = "74.4076";
    n_t2_k1 = "1.7702";
    n_t2_k0 = "27.9029";
    // remainder group
    c_t1_k2 = "1.3774";
    c_t1_k0 = "11.0190";
    c_t2_k1 = "0.4133";
    c_t2_k0 = "8.2643";
    eps_slope = "3.6133";

    // h > 0 constant group
    mc_plus_t1_k2 = "4.3271";
    mc_plus_t1_k0 = "34.6168";
    mc_plus_t2_k1 = "1.2982";
    mc_plus_t2_k0 = "25.9626";
    // h < 0 corrections
    mw_minus_t2_k2 = "0.2405";
    mw_minus_t2_k1 = "0.7886";
    mn_minus_t2_k2 = "1.4875";
    mn_minus_t2_k1 = "2.3602";
    mn_minus_t2_k0 = "27.9028";
    mc_minus_t2_k2 = "1.4424";
    mc_minus_t2_k1 = "1.7309";
    mc_minus_t2_k0 = "25.9626";

    // closed-form differences
    dw_t2_k0 = "8.6562";
    dw_t2_k1 = "0.1971";
    dw_t2_k2 = "0.2405";
    dn_t2_k0 = "55.8057";
    dn_t2_k1 = "0.5900";
    dn_t2_k2 = "1.4875";
    dc_t2_k0 = "51.9252";
    dc_t2_k1 = "0.4327";
    dc_t2_k2 = "1.4424";

    // truncation-parameter machinery, kappa = sqrt(5) - 1
    tf_lin = "7.0604";
    tf_const = "10.1186";
    e_t2 = "5.0594";
    e_const_t1 = "21.3270";
    e_const_t2 = "18.7781";
    e_degree_t1 = "33.3542";
    e_degree_t2 = "27.5673";
    e_offset = "2.9969";
    t0_degree = "33.5251";
    tmin_const_t1 = "14.2666";
    tmin_const_t2 = "32.4969";
    tmin_degree_t2 = "55.1346";
    r_w = "5.0593";
    t_offset = "8.2822";
    cmax_degree3 = "0.5167";

    // first main bound
    main_degree_const = "3.4969";
    main_const = "8.8590";

    // second main bound (kappa = 2, T = 10)
    cheb_disc = "2.2543";
    cheb_degree = "0.9722";
    cheb_sqrt = "9.0458";
    cheb_const = "7.0320";
    cheb_t = "10";
    cheb_kappa = "2";

    // earlier bounds
    plain_disc = "2";
    plain_degree = "2";
    wide_scale = "18.8";
    wide_disc = "2.3";
    wide_degree = "1.3";
    wide_log = "0.3";
    wide_const = "14.6";
    large_disc = "1.8";
    large_degree = "1.1";
    large_log = "1.2";
    large_const = "10.2";

    // asymptotic expansion
    asym_disc = "7.9584";
    asym_degree = "5.9938";
    asym_degree_8 = "23.9752";
    asym_disc_reorg = "5.9584";
    asym_degree_reorg = "19.9752";
    lambert_upper = "1.024";
}

static STANDARD: LazyLock<Constants> = LazyLock::new(Constants::parse_all);

impl Constants {
    /// The standard constant set.
    pub fn standard() -> &'static Constants {
        &STANDARD
    }

    /// `sqrt(5) - 1`, the asymptotically optimal smoothing width.
    pub fn kappa_default() -> f64 {
        5f64.sqrt() - 1.0
    }

    /// `((sqrt(5) - 1) / 2) e^{sqrt 5}`.
    pub fn nu() -> f64 {
        0.5 * Self::kappa_default() * 5f64.sqrt().exp()
    }

    /// Positive root of `T^2 - tf_lin T - tf_const`.
    pub fn t_f(&self) -> f64 {
        0.5 * (self.tf_lin + (self.tf_lin * self.tf_lin + 4.0 * self.tf_const).sqrt())
    }
}
