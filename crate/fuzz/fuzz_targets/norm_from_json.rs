#![no_main]

use flatnorm::flat_norm::{dual_norm, Ball, NormConfig};
use flatnorm::io::{norm_result_to_json, parse_measure};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(mu) = parse_measure(text) else {
        return;
    };
    let config = NormConfig { support_cap: 24 };
    let (Ok(bl), Ok(fm)) = (
        dual_norm(&mu, Ball::Bl, &config),
        dual_norm(&mu, Ball::Fm, &config),
    ) else {
        return;
    };
    let tv = mu.tv_norm();
    let slack = 1e-7 * (1.0 + tv);
    assert!(bl.value <= fm.value + slack);
    assert!(fm.value <= tv + slack);
    let v = norm_result_to_json(&bl, mu.space());
    assert!(v["value"].is_number());
});
