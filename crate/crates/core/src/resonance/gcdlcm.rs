//! The gcd/lcm correlation sum sum_{i,j in M} (gcd(i,j)/lcm[i,j])^theta,
//! the quantity whose growth the structured set M is built to maximise.

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact double sum over all ordered pairs; (gcd/lcm)^theta is computed in
/// log space so products up to 2^63 x 2^63 never overflow.
pub fn gcd_lcm_correlation(m: &[u64], theta: f64) -> f64 {
    assert!(!m.is_empty(), "gcd_lcm_correlation needs a nonempty set");
    assert!(theta > 0.0 && theta <= 1.0);
    let logs: Vec<f64> = m.iter().map(|&v| (v as f64).ln()).collect();
    let mut total = 0.0;
    for i in 0..m.len() {
        let mut row = 0.0;
        for j in 0..m.len() {
            if i == j {
                row += 1.0;
                continue;
            }
            let g = gcd(m[i], m[j]);
            // gcd/lcm = g^2/(i j)
            row += (theta * (2.0 * (g as f64).ln() - logs[i] - logs[j])).exp();
        }
        total += row;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton() {
        assert_eq!(gcd_lcm_correlation(&[1], 0.5), 1.0);
        assert_eq!(gcd_lcm_correlation(&[7], 1.0 / 3.0), 1.0);
    }

    #[test]
    fn two_element_hand_value() {
        // M = {1, 2}, theta = 1/2: diagonal 2, cross pairs 2 (1/2)^{1/2}
        let got = gcd_lcm_correlation(&[1, 2], 0.5);
        let want = 2.0 + 2.0 * 0.5f64.sqrt();
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn diagonal_dominates() {
        let m: Vec<u64> = (1..=50).map(|k| 2 * k + 1).collect();
        for theta in [1.0 / 3.0, 0.5, 1.0] {
            assert!(gcd_lcm_correlation(&m, theta) >= m.len() as f64);
        }
    }

    #[test]
    fn brute_force_rational_check() {
        let m = [4u64, 6, 9, 10];
        let got = gcd_lcm_correlation(&m, 0.5);
        let mut want = 0.0;
        for &i in &m {
            for &j in &m {
                let g = gcd(i, j);
                let l = i / g * j;
                want += (g as f64 / l as f64).sqrt();
            }
        }
        assert!((got - want).abs() < 1e-12);
    }
}
