#![no_main]

use flatnorm::io::parse_operator;
use flatnorm::measure::DiscreteSignedMeasure;
use flatnorm::metric::{MetricSpace, Point};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let line = MetricSpace::real_line();
    if let Ok(op) = parse_operator(text, &line) {
        if op.space() == &line {
            let mu = DiscreteSignedMeasure::dirac(&line, Point::real(0.25)).unwrap();
            if let Ok(image) = op.apply(&mu) {
                assert!((image.total_mass() - 1.0).abs() < 1e-9);
            }
        }
    }
});
