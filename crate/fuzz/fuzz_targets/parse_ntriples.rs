#![no_main]

use libfuzzer_sys::fuzz_target;
use musicmeta::serial::{parse_ntriples, write_ntriples, write_turtle};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(graph) = parse_ntriples(text) else {
        return;
    };
    // anything we accept must survive our own writer
    let canonical = write_ntriples(&graph, true);
    let again = parse_ntriples(&canonical).expect("canonical output parses");
    assert_eq!(again, graph);
    assert_eq!(write_ntriples(&again, true), canonical);
    let _ = write_turtle(&graph);
});
