#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(poly) = gpgcd::io::parse_poly_file(text) {
            // accepted polynomials satisfy the container invariants
            assert!(poly.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite()));
            assert_eq!(poly.coeffs().len(), poly.nominal_degree() + 1);
            // and round-trip through the writer
            let reparsed = gpgcd::io::parse_poly_file(&gpgcd::io::poly_to_json(&poly)).unwrap();
            assert_eq!(reparsed, poly);
        }
    }
});
