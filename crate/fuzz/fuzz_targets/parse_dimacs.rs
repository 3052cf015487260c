#![no_main]

use libfuzzer_sys::fuzz_target;
use qreflect::{parse_dimacs, OracleSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(formula) = parse_dimacs(text) else {
        return;
    };
    // Anything accepted must survive a render/parse cycle unchanged.
    let again = parse_dimacs(&formula.to_dimacs()).expect("rendered formula parses");
    assert_eq!(again, formula);
    if formula.num_vars() <= 12 {
        if let Ok(oracle) = OracleSpec::cnf(formula) {
            let _ = oracle.brute_force_solutions();
        }
    }
});
