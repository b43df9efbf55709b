//! Exact-number literals accepted on the command line.
//!
//! `p/q`, `p/q + r/s*sqrt(D)`, `sqrt(D)`, the keyword `golden` for
//! `(-1 + sqrt(5))/2`, and `beta(L,S)` for the positive root of
//! `L·x + S·x² = 1`.

use lds_core::{beta, QuadReal};

use crate::CliError;

pub fn parse_literal(s: &str) -> Result<QuadReal, CliError> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("golden") {
        return Ok(beta(1, 1).expect("golden section"));
    }
    if let Some(rest) = t.strip_prefix("beta(").and_then(|r| r.strip_suffix(')')) {
        let mut parts = rest.split(',').map(str::trim);
        let (l, s_param) = (parts.next(), parts.next());
        if let (Some(l), Some(s_param), None) = (l, s_param, parts.next()) {
            let l: u32 = l
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid L in `{t}`")))?;
            let s_param: u32 = s_param
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid S in `{t}`")))?;
            return beta(l, s_param).map_err(|e| CliError::Usage(e.to_string()));
        }
        return Err(CliError::Usage(format!("malformed beta literal `{t}`")));
    }
    t.parse::<QuadReal>().map_err(|e| CliError::Usage(e.to_string()))
}
