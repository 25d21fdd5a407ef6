//! Gauss-Legendre rules on [-1, 1] used for element integration.

/// Points and weights of the `n`-point rule, `1 <= n <= 4`.
pub fn gauss_rule(n: usize) -> &'static [(f64, f64)] {
    const G1: [(f64, f64); 1] = [(0.0, 2.0)];
    const G2: [(f64, f64); 2] = [(-0.577_350_269_189_625_8, 1.0), (0.577_350_269_189_625_8, 1.0)];
    const G3: [(f64, f64); 3] = [
        (-0.774_596_669_241_483_4, 5.0 / 9.0),
        (0.0, 8.0 / 9.0),
        (0.774_596_669_241_483_4, 5.0 / 9.0),
    ];
    const G4: [(f64, f64); 4] = [
        (-0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
        (-0.339_981_043_584_856_3, 0.652_145_154_862_546_2),
        (0.339_981_043_584_856_3, 0.652_145_154_862_546_2),
        (0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
    ];
    match n {
        1 => &G1,
        2 => &G2,
        3 => &G3,
        4 => &G4,
        _ => panic!("unsupported Gauss rule order {n}"),
    }
}

/// Maps a rule point from [-1, 1] onto [a, b]: returns (coordinate, weight).
pub fn map_to_interval(point: (f64, f64), a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    (a + half * (point.0 + 1.0), half * point.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rules_integrate_polynomials_exactly() {
        // n-point rule is exact through degree 2n-1
        for n in 1..=4 {
            let rule = gauss_rule(n);
            for deg in 0..2 * n {
                let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
                let num: f64 = rule.iter().map(|&(x, w)| w * x.powi(deg as i32)).sum();
                assert_relative_eq!(num, exact, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn interval_mapping_preserves_measure() {
        let total: f64 = gauss_rule(3)
            .iter()
            .map(|&p| map_to_interval(p, 0.25, 0.75).1)
            .sum();
        assert_relative_eq!(total, 0.5, epsilon = 1e-15);
    }
}
