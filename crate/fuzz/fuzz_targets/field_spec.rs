#![no_main]

use libfuzzer_sys::fuzz_target;
use psibound::parse::{parse_field_spec, parse_log_decimal};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_field_spec(s) {
        assert!(p.log_disc() >= 0.0 && p.log_disc().is_finite());
        let (r1, r2) = p.signature();
        assert_eq!(r1 + 2 * r2, p.degree());
    }
    if let Ok(l) = parse_log_decimal(s) {
        assert!(l.is_finite());
    }
});
