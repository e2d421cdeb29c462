#![no_main]

use libfuzzer_sys::fuzz_target;
use perscontext::io;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(world) = io::parse_world(text) {
        let _ = world.validate();
        let _ = world.containment();
    }
});
