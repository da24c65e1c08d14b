//! Built-in worked examples with their known series.

use crate::fsa::strict_growth_series;
use crate::graphprod::{builtin, conj_geodesic_language, geodesic_language, GraphProdError, GraphProductSpec};
use crate::series::RationalFunction;

#[derive(Clone, Debug)]
pub struct Check {
    pub example: &'static str,
    pub language: &'static str,
    pub expected: RationalFunction,
    pub actual: RationalFunction,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }

    pub fn line(&self) -> String {
        format!(
            "{} {} {}: {} (expected {})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.example,
            self.language,
            self.actual.render_factored(),
            self.expected.render_factored()
        )
    }
}

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::from_i64s(num, den).expect("nonzero denominator")
}

fn check(
    example: &'static str,
    language: &'static str,
    spec: &GraphProductSpec,
    expected: RationalFunction,
) -> Result<Check, GraphProdError> {
    let d = if language == "geo" { geodesic_language(spec)? } else { conj_geodesic_language(spec)? };
    Ok(Check { example, language, expected, actual: strict_growth_series(&d) })
}

pub fn run_all() -> Result<Vec<Check>, GraphProdError> {
    let racg = builtin::racg();
    Ok(vec![
        check("racg", "geo", &racg, rf(&[1, 1, 1, -1], &[1, -2, 1]))?,
        check("racg", "conjgeo", &racg, rf(&[1, 3, 4, 0, -9, 1, 4], &[1, 0, -2, 0, 1]))?,
        check("psl2", "conjgeo", &builtin::psl2(), rf(&[1, 3, 2, -6], &[1, 0, -2]))?,
        check("f2", "conjgeo", &builtin::f2(), rf(&[1, 1, -1, -9], &[1, -3, -1, 3]))?,
    ])
}
