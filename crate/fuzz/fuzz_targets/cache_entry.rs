#![no_main]

use libfuzzer_sys::fuzz_target;
use maxdim_cli::cache::{decode_cache_entry, encode_cache_entry};

fuzz_target!(|data: &[u8]| {
    if let Ok(e) = decode_cache_entry(data) {
        assert_eq!(decode_cache_entry(encode_cache_entry(&e).as_bytes()).unwrap(), e);
    }
});
