#![no_main]

use libfuzzer_sys::fuzz_target;
use maxdim_cli::spec::{no_files, parse_group_spec_with, serialize_group_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_group_spec_with(text, &no_files) {
        let again = parse_group_spec_with(&serialize_group_spec(&spec), &no_files).expect("canonical text parses");
        assert_eq!(again, spec);
    }
});
