//! Spectrum serialization: JSON with the certificate block, CSV with
//! length,multiplicity columns.

use super::LengthSpectrum;
use serde::Serialize;

#[derive(Serialize)]
struct SpectrumDoc<'a> {
    cutoff: f64,
    classes: &'a [super::GeodesicClass],
    certificate: &'a super::Certificate,
}

pub fn spectrum_to_json(spec: &LengthSpectrum) -> serde_json::Value {
    serde_json::to_value(SpectrumDoc {
        cutoff: spec.cutoff,
        classes: &spec.classes,
        certificate: &spec.certificate,
    })
    .expect("spectrum serialization cannot fail")
}

pub fn spectrum_to_csv(spec: &LengthSpectrum) -> String {
    let mut out = String::from("length,multiplicity\n");
    for c in &spec.classes {
        out.push_str(&format!("{:.12},{}\n", c.length, c.multiplicity));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{build_group, GroupSpec};
    use crate::spectrum::{enumerate_spectrum, SpectrumOptions};

    #[test]
    fn exports_have_expected_shape() {
        let g = build_group(&GroupSpec::Bolza).unwrap();
        let s = enumerate_spectrum(&g, 3.2, &SpectrumOptions::default()).unwrap();
        let j = spectrum_to_json(&s);
        assert!(j["certificate"]["certified"].as_bool().unwrap());
        assert_eq!(
            j["classes"].as_array().unwrap().len(),
            s.classes.len()
        );
        let csv = spectrum_to_csv(&s);
        assert!(csv.starts_with("length,multiplicity\n"));
        assert_eq!(csv.lines().count(), s.classes.len() + 1);
    }
}
