#![no_main]

use libfuzzer_sys::fuzz_target;
use maxdim_cli::spec::{format_cycles, parse_cycles};
use maxdim_core::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cycles) = parse_cycles(text) else { return };
    let degree = cycles.iter().flatten().max().map_or(1, |&x| x + 1);
    let Ok(p) = Permutation::from_cycles(degree, &cycles) else { return };
    let back = parse_cycles(&format_cycles(&p)).expect("formatted cycles parse");
    assert_eq!(Permutation::from_cycles(degree, &back).unwrap(), p);
});
