use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").expect("set by cargo"));
    let out_dir = PathBuf::from(std::env::var("OUT_DIR").expect("set by cargo"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    let bindings = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("FE_COMPLEX_H")
        .with_documentation(true)
        .generate()
        .expect("unable to generate C bindings");
    bindings.write_to_file(out_dir.join("fe_complex.h"));
    bindings.write_to_file(crate_dir.join("include").join("fe_complex.h"));
}
