#![no_main]

use flatnorm::io::{parse_measure, parse_measure_list, serialize_measure};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_measure_list(text);
    if let Ok(mu) = parse_measure(text) {
        assert!(mu.tv_norm() >= 0.0);
        if let Ok(s) = serialize_measure(&mu) {
            let again = parse_measure(&s).expect("serialized measure reparses");
            assert_eq!(mu, again);
        }
    }
});
