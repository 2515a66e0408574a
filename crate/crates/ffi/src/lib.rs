//! C ABI over the exact finite element library. Objects are opaque handles
//! released by the matching `_free`; every call returns an `i32` status.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use fe_complex::bernstein::Geometry;
use fe_complex::complex::{self, mesh, ComplexSpec, Triangulation};
use fe_complex::decomposition::Smoothness3;
use fe_complex::elements::dimension::scalar_counts;
use fe_complex::elements::{build_table, verify_unisolvence, DofTable, Frames};
use fe_complex::Error;

pub const FE_OK: i32 = 0;
pub const FE_ERR_NULL: i32 = 1;
pub const FE_ERR_PARSE: i32 = 2;
pub const FE_ERR_INVALID: i32 = 3;
pub const FE_ERR_SINGULAR: i32 = 4;
pub const FE_ERR_MESH: i32 = 5;
pub const FE_ERR_INTERNAL: i32 = 6;

/// DoF table of one element on the reference simplex.
pub struct FeElement {
    table: DofTable,
    geometry: Geometry,
}

pub struct FeMesh {
    mesh: Triangulation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status(err: Error) -> i32 {
    let code = match err {
        Error::Parse(_) => FE_ERR_PARSE,
        Error::InvalidSmoothness(_) | Error::InvalidSubSimplex(_) | Error::InvalidDirection(_) => FE_ERR_INVALID,
        Error::Singular(_) | Error::DimensionMismatch(_) => FE_ERR_SINGULAR,
        Error::InvalidMesh(_) | Error::DegenerateGeometry(_) | Error::NonConforming(_) => FE_ERR_MESH,
        _ => FE_ERR_INTERNAL,
    };
    set_error(err.to_string());
    code
}

/// `None` for a null pointer; invalid UTF-8 is a parse error.
unsafe fn opt_str<'a>(s: *const c_char) -> Result<Option<&'a str>, i32> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s).to_str().map(Some).map_err(|_| {
        set_error("string is not UTF-8".into());
        FE_ERR_PARSE
    })
}

unsafe fn req_str<'a>(s: *const c_char) -> Result<&'a str, i32> {
    match opt_str(s)? {
        Some(v) => Ok(v),
        None => {
            set_error("required string argument is null".into());
            Err(FE_ERR_NULL)
        }
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(code) => return code,
        }
    };
}

/// Message of the last failed call on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn fe_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the DoF table of `family` with shape degree `k`.
///
/// # Safety
///
/// `family` must be a nul-terminated string; `r` and `r2` nul-terminated or null;
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fe_element_new(
    family: *const c_char,
    k: u32,
    r: *const c_char,
    r2: *const c_char,
    out: *mut *mut FeElement,
) -> i32 {
    if out.is_null() {
        return FE_ERR_NULL;
    }
    let family = try_ffi!(req_str(family));
    let r = try_ffi!(opt_str(r));
    let r2 = try_ffi!(opt_str(r2));
    let spec = match fe_complex::cli::element_spec(family, k, r, r2, None) {
        Ok(s) => s,
        Err(e) => return status(e),
    };
    let geometry = Geometry::reference(spec.shape().n);
    match build_table(&spec, &geometry, &Frames::default()) {
        Ok(table) => {
            *out = Box::into_raw(Box::new(FeElement { table, geometry }));
            FE_OK
        }
        Err(e) => status(e),
    }
}

/// # Safety
///
/// `element` must come from `fe_element_new` and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fe_element_free(element: *mut FeElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

/// # Safety
///
/// `element` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fe_element_dof_count(element: *const FeElement, out: *mut usize) -> i32 {
    let (Some(e), false) = (element.as_ref(), out.is_null()) else { return FE_ERR_NULL };
    *out = e.table.len();
    FE_OK
}

/// # Safety
///
/// `element` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fe_element_shape_dim(element: *const FeElement, out: *mut usize) -> i32 {
    let (Some(e), false) = (element.as_ref(), out.is_null()) else { return FE_ERR_NULL };
    *out = e.table.shape().dim();
    FE_OK
}

/// Writes 1 when the exact DoF determinant is nonzero, else 0.
///
/// # Safety
///
/// `element` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fe_element_unisolvent(element: *const FeElement, out: *mut i32) -> i32 {
    let (Some(e), false) = (element.as_ref(), out.is_null()) else { return FE_ERR_NULL };
    match verify_unisolvence(&e.table, &e.geometry) {
        Ok(u) => {
            *out = u.unisolvent as i32;
            FE_OK
        }
        Err(err) => status(err),
    }
}

/// DoF table as JSON; release with `fe_string_free`.
///
/// # Safety
///
/// `element` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fe_element_to_json(element: *const FeElement, out: *mut *mut c_char) -> i32 {
    let (Some(e), false) = (element.as_ref(), out.is_null()) else { return FE_ERR_NULL };
    *out = CString::new(e.table.to_json().to_string()).expect("JSON has no nul bytes").into_raw();
    FE_OK
}

/// # Safety
///
/// `s` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fe_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Closed-form scalar DoF counts per vertex, edge, face and interior.
///
/// # Safety
///
/// `out` must be valid for writing four values.
#[no_mangle]
pub unsafe extern "C" fn fe_scalar_counts(k: u32, rv: i32, re: i32, rf: i32, out: *mut i64) -> i32 {
    if out.is_null() {
        return FE_ERR_NULL;
    }
    let r = Smoothness3::new(rv, re, rf);
    if let Err(e) = r.validate(k) {
        return status(e);
    }
    if rf < 0 {
        set_error("the closed form needs r_f >= 0".into());
        return FE_ERR_INVALID;
    }
    std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&scalar_counts(k, r));
    FE_OK
}

/// Loads tet1, tet2, fan3, tri2, seg2 or a mesh file.
///
/// # Safety
///
/// `name` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fe_mesh_load(name: *const c_char, out: *mut *mut FeMesh) -> i32 {
    if out.is_null() {
        return FE_ERR_NULL;
    }
    let name = try_ffi!(req_str(name));
    match mesh::load(name) {
        Ok(mesh) => {
            *out = Box::into_raw(Box::new(FeMesh { mesh }));
            FE_OK
        }
        Err(e) => status(e),
    }
}

/// # Safety
///
/// `mesh` must come from `fe_mesh_load` and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fe_mesh_free(mesh: *mut FeMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Writes up to `len` sub-simplex counts by dimension and stores the mesh dimension plus one in `written`.
///
/// # Safety
///
/// `mesh` must be a live handle, `out` valid for `len` writes and `written` valid for one.
#[no_mangle]
pub unsafe extern "C" fn fe_mesh_counts(mesh: *const FeMesh, out: *mut usize, len: usize, written: *mut usize) -> i32 {
    let (Some(m), false, false) = (mesh.as_ref(), out.is_null() && len > 0, written.is_null()) else {
        return FE_ERR_NULL;
    };
    let counts = m.mesh.counts();
    let n = counts.len().min(len);
    if n > 0 {
        std::slice::from_raw_parts_mut(out, n).copy_from_slice(&counts[..n]);
    }
    *written = counts.len();
    FE_OK
}

/// Runs the exactness check of a named complex ("hermite", "argyris", "stokes") on `mesh`;
/// writes 1 when every property holds.
///
/// # Safety
///
/// `mesh` must be a live handle, `suite` nul-terminated and `exact` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fe_complex_exact(mesh: *const FeMesh, suite: *const c_char, exact: *mut i32) -> i32 {
    let (Some(m), false) = (mesh.as_ref(), exact.is_null()) else { return FE_ERR_NULL };
    let suite = try_ffi!(req_str(suite));
    let spec = match ComplexSpec::preset(suite) {
        Ok(s) => s,
        Err(e) => return status(e),
    };
    match complex::exactness_check(&m.mesh, spec, &Frames::default()) {
        Ok(report) => {
            *exact = report.exact as i32;
            FE_OK
        }
        Err(e) => status(e),
    }
}
