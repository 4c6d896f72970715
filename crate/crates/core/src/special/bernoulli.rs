//! Even-index Bernoulli numbers and the derived Euler–Maclaurin / Stirling
//! coefficients.

use std::sync::OnceLock;

/// B_2, B_4, …, B_60.
const BERNOULLI_EVEN: [f64; 30] = [
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e+16,
    8.416930475736826e+17,
    -4.0338071854059454e+19,
    2.1150748638081993e+21,
    -1.2086626522296526e+23,
    7.500866746076964e+24,
    -5.038778101481069e+26,
    3.6528776484818122e+28,
    -2.849876930245088e+30,
    2.3865427499683627e+32,
    -2.1399949257225335e+34,
];

pub const MAX_INDEX: usize = BERNOULLI_EVEN.len();

/// B_{2k} for k = 1..=30.
pub fn bernoulli_even(k: usize) -> f64 {
    BERNOULLI_EVEN[k - 1]
}

/// B_{2k} / (2k)! for k = 1..=30, built once.
pub fn over_factorial(k: usize) -> f64 {
    static TABLE: OnceLock<[f64; MAX_INDEX]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; MAX_INDEX];
        let mut fact = 1.0f64;
        for (i, slot) in out.iter_mut().enumerate() {
            let two_k = 2 * (i + 1);
            fact *= ((two_k - 1) * two_k) as f64;
            *slot = BERNOULLI_EVEN[i] / fact;
        }
        out
    })[k - 1]
}
