#![no_main]

use genperm::json::{parse_set_function, set_function_from_value, set_function_to_json};
use genperm::setfun::{mobius_transform, zeta_transform};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(f) = parse_set_function(data, 8) else {
        return;
    };
    assert_eq!(set_function_from_value(&set_function_to_json(&f), 8).unwrap(), f);
    if let Ok(z) = zeta_transform(&f) {
        assert_eq!(mobius_transform(&z).unwrap(), f);
    }
});
