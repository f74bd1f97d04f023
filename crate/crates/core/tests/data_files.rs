use sha2::{Digest, Sha256};
use steadycert_core::certify::data::{ideal, FILES, I_COMPONENTS, HG, J1_H123, QUOTIENT_COMPONENTS};

// Digests of the generator lists as transcribed; any edit to a data file
// must update this table deliberately.
const SHA256: [(&str, &str); 4] = [
    ("I_components.json", "581470630de2a3d4c0331ca8d859a45f94b74fe18e24eb2b107578c4c03ca288"),
    ("J1_h123.json", "fbeaf0b9c47b1fc3a594c1ddb3756b7153e0cdb1ed8e99268d24724426e3f0c8"),
    ("HG.json", "110fcc1c89fe68d02ae6175ddac4d4c4a9c573a67ae5df04abe88b66c9bc6cfa"),
    ("quotient_components.json", "cbc32e43512a662480ff19ef8cf707cb3dcb8a899a65dbef9f93eca3dd6922c4"),
];

#[test]
fn data_files_are_unchanged() {
    for ((name, text), (expect_name, digest)) in FILES.iter().zip(SHA256) {
        assert_eq!(*name, expect_name);
        assert_eq!(hex::encode(Sha256::digest(text.as_bytes())), digest, "{name}");
    }
}

#[test]
fn generator_counts() {
    let count = |text: &str, name: &str| ideal(text, name).unwrap().generators().len();
    for name in ["I", "I1", "I3"] {
        assert_eq!(count(I_COMPONENTS, name), 3);
    }
    assert_eq!(count(I_COMPONENTS, "I2"), 11);
    assert_eq!(count(J1_H123, "J1"), 3);
    assert_eq!(count(J1_H123, "J2"), 3);
    assert_eq!(count(HG, "H"), 3);
    assert_eq!(count(HG, "G"), 11);
    for k in 1..=5 {
        assert_eq!(count(QUOTIENT_COMPONENTS, &format!("C{k}")), 2);
    }
    assert!(ideal(HG, "K").is_err());
}
