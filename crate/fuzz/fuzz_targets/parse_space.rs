#![no_main]

use flatnorm::io::{parse_space, space_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(space) = parse_space(text) {
        // Anything that parses must serialize and parse back to itself.
        if let Ok(v) = space_to_json(&space) {
            let again = parse_space(&v.to_string()).expect("serialized space reparses");
            assert_eq!(space, again);
        }
    }
});
