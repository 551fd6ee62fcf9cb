#![no_main]

use libfuzzer_sys::fuzz_target;
use maxdim_cli::report::{decode_report, encode_report};

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = decode_report(data) {
        assert_eq!(decode_report(encode_report(&r).as_bytes()).unwrap(), r);
    }
});
