#![no_main]

use genperm::json::{parse_rational, rational_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(q) = parse_rational(data) {
        let text = rational_to_json(&q);
        assert_eq!(parse_rational(text.as_str().unwrap()).unwrap(), q);
    }
});
