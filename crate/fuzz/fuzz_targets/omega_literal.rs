#![no_main]

use libfuzzer_sys::fuzz_target;
use qreflect::parse_omega_literal;

fuzz_target!(|input: (u8, &str)| {
    let (width, literal) = input;
    if let Ok(index) = parse_omega_literal(literal, width as usize) {
        assert!(index.value() >> index.width() == 0);
    }
});
