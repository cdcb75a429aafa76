#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(doc) = gpgcd::io::parse_gcd_document(text) {
            // every embedded polynomial validated during parsing
            for poly in [&doc.h, &doc.f_tilde, &doc.g_tilde, &doc.a, &doc.b] {
                poly.to_poly().unwrap();
            }
            assert!(doc.perturbation.is_finite() && doc.perturbation >= 0.0);
            assert!(doc.residual_chosen.is_finite() && doc.residual_chosen >= 0.0);
            // and the document survives a write/read cycle
            let reparsed = gpgcd::io::parse_gcd_document(&doc.to_json()).unwrap();
            assert_eq!(reparsed.h, doc.h);
            assert_eq!(reparsed.iterations, doc.iterations);
        }
    }
});
