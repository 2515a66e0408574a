use std::ffi::{CStr, CString};
use std::ptr;

use fe_complex_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn hermite_element_round_trip() {
    let mut h = ptr::null_mut();
    let (family, r) = (c("grad"), c("1,0,0"));
    unsafe {
        assert_eq!(fe_element_new(family.as_ptr(), 3, r.as_ptr(), ptr::null(), &mut h), FE_OK);
        let mut n = 0usize;
        assert_eq!(fe_element_dof_count(h, &mut n), FE_OK);
        assert_eq!(n, 20);
        assert_eq!(fe_element_shape_dim(h, &mut n), FE_OK);
        assert_eq!(n, 20);
        let mut ok = 0;
        assert_eq!(fe_element_unisolvent(h, &mut ok), FE_OK);
        assert_eq!(ok, 1);
        let mut json = ptr::null_mut();
        assert_eq!(fe_element_to_json(h, &mut json), FE_OK);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        fe_string_free(json);
        assert!(text.contains("\"count\":20"));
        fe_element_free(h);
    }
}

#[test]
fn invalid_input_reports_codes_and_messages() {
    let mut h = ptr::null_mut();
    let (family, bad, invalid) = (c("grad"), c("a,b"), c("0,1,0"));
    unsafe {
        assert_eq!(fe_element_new(family.as_ptr(), 3, bad.as_ptr(), ptr::null(), &mut h), FE_ERR_PARSE);
        assert!(h.is_null());
        assert_eq!(fe_element_new(family.as_ptr(), 3, invalid.as_ptr(), ptr::null(), &mut h), FE_ERR_INVALID);
        let msg = CStr::from_ptr(fe_last_error_message()).to_str().unwrap();
        assert!(msg.contains("r_v"), "{msg}");
        assert_eq!(fe_element_new(ptr::null(), 3, ptr::null(), ptr::null(), &mut h), FE_ERR_NULL);
        assert_eq!(fe_element_dof_count(ptr::null(), &mut 0usize), FE_ERR_NULL);
        fe_element_free(ptr::null_mut());
        fe_string_free(ptr::null_mut());
    }
}

#[test]
fn scalar_counts_and_meshes() {
    let mut out = [0i64; 4];
    unsafe {
        assert_eq!(fe_scalar_counts(5, 2, 1, 0, out.as_mut_ptr()), FE_OK);
        assert_eq!(out, [10, 2, 0, 4]);
        assert_eq!(fe_scalar_counts(5, 2, 1, -1, out.as_mut_ptr()), FE_ERR_INVALID);
        let mut m = ptr::null_mut();
        let name = c("tet2");
        assert_eq!(fe_mesh_load(name.as_ptr(), &mut m), FE_OK);
        let mut counts = [0usize; 4];
        let mut written = 0;
        assert_eq!(fe_mesh_counts(m, counts.as_mut_ptr(), 4, &mut written), FE_OK);
        assert_eq!((counts, written), ([5, 9, 7, 2], 4));
        let mut exact = 0;
        let suite = c("hermite");
        assert_eq!(fe_complex_exact(m, suite.as_ptr(), &mut exact), FE_OK);
        assert_eq!(exact, 1);
        let bogus = c("bogus");
        assert_eq!(fe_complex_exact(m, bogus.as_ptr(), &mut exact), FE_ERR_PARSE);
        fe_mesh_free(m);
        let missing = c("/nonexistent/mesh.txt");
        assert_eq!(fe_mesh_load(missing.as_ptr(), &mut m), FE_ERR_MESH);
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!(concat!(env!("OUT_DIR"), "/fe_complex.h"));
    for name in ["fe_element_new", "fe_element_free", "fe_mesh_load", "fe_complex_exact", "FE_ERR_PARSE", "FeElement"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
