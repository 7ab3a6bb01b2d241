#![no_main]

use flatnorm::io::parse_function;
use flatnorm::metric::{MetricSpace, Point};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let line = MetricSpace::real_line();
    if let Ok(f) = parse_function(text, &line) {
        for x in [-3.0, 0.0, 0.5, 1.0, 1e6] {
            let _ = f.evaluate(&Point::real(x));
        }
    }
    let _ = parse_function(text, &MetricSpace::unit_interval());
});
