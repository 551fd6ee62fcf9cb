#![no_main]

use libfuzzer_sys::fuzz_target;
use maxdim_cli::spec::{parse_module_file, serialize_module_file};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(recipe) = parse_module_file(text) {
        let canonical = serialize_module_file(&recipe).expect("module recipe");
        assert_eq!(parse_module_file(&canonical).unwrap(), recipe);
    }
});
