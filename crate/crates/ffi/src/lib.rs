// Copyright 2026 The holdcircle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! C ABI for holdcircle.
//!
//! Bodies and reports are opaque handles created by `hc_*` constructors and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`HcStatus`]; on failure [`hc_last_error`] describes the problem.
//! Strings returned by the library are freed with [`hc_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use holdcircle::convex::{build_hull, min_cylinder, width3, CylinderConfig, Point3, Polytope3};
use holdcircle::families;
use holdcircle::holding::{
    holding_report, min_holding_circle, Circle3, EscapeConfig, HoldingConfig, HoldingReport, SearchConfig, Verdict,
};
use holdcircle::io;
use holdcircle::GeomError;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    Parse = 4,
    InvalidStart = 5,
    NotFound = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcVerdict {
    CertifiedHoldingEvidence = 0,
    EscapeFound = 1,
    Inconclusive = 2,
}

/// Circle in space; `normal` need not be normalized on input.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcCircle {
    pub center: [f64; 3],
    pub diameter: f64,
    pub normal: [f64; 3],
}

/// Opaque convex polytope.
pub struct HcPolytope {
    inner: Polytope3,
}

/// Opaque holding report.
pub struct HcReport {
    inner: HoldingReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(HcStatus, String);

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        let status = match &e {
            GeomError::DegenerateInput(_) | GeomError::EmptyResult(_) => HcStatus::Degenerate,
            GeomError::InvalidInput(_) | GeomError::InvalidParam(_) => HcStatus::InvalidArgument,
            GeomError::Parse(_) | GeomError::Io(_) => HcStatus::Parse,
            GeomError::InvalidStart => HcStatus::InvalidStart,
            GeomError::NoSolution(_) | GeomError::NoBlockingSlice | GeomError::NotFound => HcStatus::NotFound,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HcStatus::NullPointer, format!("{what} is null"))
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HcStatus::Internal
        }
    }
}

unsafe fn polytope<'a>(p: *const HcPolytope) -> Result<&'a Polytope3, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("polytope"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_circle(c: &HcCircle) -> Result<Circle3, Failure> {
    if c.center.iter().any(|x| !x.is_finite()) {
        return Err(Failure(HcStatus::InvalidArgument, "circle center must be finite".into()));
    }
    Ok(Circle3::new(c.center.into(), c.diameter, c.normal.into())?)
}

fn from_circle(c: &Circle3) -> HcCircle {
    HcCircle { center: c.center.into(), diameter: c.diameter, normal: c.normal.into() }
}

fn boxed(k: Polytope3) -> *mut HcPolytope {
    Box::into_raw(Box::new(HcPolytope { inner: k }))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Convex hull of `n_points` points stored as `x0 y0 z0 x1 y1 z1 …`.
#[no_mangle]
pub unsafe extern "C" fn hc_polytope_from_points(xyz: *const f64, n_points: usize, out: *mut *mut HcPolytope) -> HcStatus {
    guard(|| {
        if xyz.is_null() {
            return Err(null("xyz"));
        }
        let flat = std::slice::from_raw_parts(xyz, n_points * 3);
        let pts: Vec<Point3> = flat.chunks_exact(3).map(|c| Point3::new(c[0], c[1], c[2])).collect();
        let k = build_hull(&pts)?;
        write(out, boxed(k))
    })
}

/// Body from `{"vertices": [[x, y, z], …]}`.
#[no_mangle]
pub unsafe extern "C" fn hc_polytope_from_json(json: *const c_char, out: *mut *mut HcPolytope) -> HcStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| Failure(HcStatus::Parse, e.to_string()))?;
        let k: Polytope3 = io::parse_json(text)?;
        write(out, boxed(k))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hc_polytope_free(p: *mut HcPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hc_polytope_vertex_count(p: *const HcPolytope, out: *mut usize) -> HcStatus {
    guard(|| write(out, polytope(p)?.vertices().len()))
}

#[no_mangle]
pub unsafe extern "C" fn hc_polytope_face_count(p: *const HcPolytope, out: *mut usize) -> HcStatus {
    guard(|| write(out, polytope(p)?.faces().len()))
}

/// Copies vertex `index` into `out[0..3]`.
#[no_mangle]
pub unsafe extern "C" fn hc_polytope_vertex(p: *const HcPolytope, index: usize, out: *mut f64) -> HcStatus {
    guard(|| {
        let k = polytope(p)?;
        let v = k.vertices().get(index).ok_or_else(|| {
            Failure(HcStatus::InvalidArgument, format!("vertex {index} out of range ({})", k.vertices().len()))
        })?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        ptr::copy_nonoverlapping([v.x, v.y, v.z].as_ptr(), out, 3);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hc_polytope_volume(p: *const HcPolytope, out: *mut f64) -> HcStatus {
    guard(|| write(out, polytope(p)?.volume()))
}

/// Exact width; `direction` (3 doubles) may be null.
#[no_mangle]
pub unsafe extern "C" fn hc_width(p: *const HcPolytope, width: *mut f64, direction: *mut f64) -> HcStatus {
    guard(|| {
        let w = width3(polytope(p)?)?;
        if !direction.is_null() {
            ptr::copy_nonoverlapping([w.direction.x, w.direction.y, w.direction.z].as_ptr(), direction, 3);
        }
        write(width, w.width)
    })
}

/// Diameter of the smallest circumscribing cylinder found.
#[no_mangle]
pub unsafe extern "C" fn hc_min_cylinder(p: *const HcPolytope, diameter: *mut f64) -> HcStatus {
    guard(|| write(diameter, min_cylinder(polytope(p)?, &CylinderConfig::default()).diameter))
}

/// Octahedron iceberg `(a, h)` with its reference circle (`circle` may be null).
#[no_mangle]
pub unsafe extern "C" fn hc_octahedron_iceberg(a: f64, h: f64, out: *mut *mut HcPolytope, circle: *mut HcCircle) -> HcStatus {
    guard(|| {
        let inst = families::octahedron_iceberg(a, h)?;
        if let (false, Some(c)) = (circle.is_null(), inst.circle) {
            circle.write(from_circle(&c));
        }
        write(out, boxed(inst.body))
    })
}

/// Flat tetrahedron with parameter `eps` and its reference circle (`circle` may be null).
#[no_mangle]
pub unsafe extern "C" fn hc_flat_tetrahedron(eps: f64, out: *mut *mut HcPolytope, circle: *mut HcCircle) -> HcStatus {
    guard(|| {
        let inst = families::flat_tetrahedron(eps)?;
        if let (false, Some(c)) = (circle.is_null(), inst.circle) {
            circle.write(from_circle(&c));
        }
        write(out, boxed(inst.body))
    })
}

fn holding_config(budget: usize, seed: u64) -> HoldingConfig {
    HoldingConfig { escape: EscapeConfig { budget, seed, ..Default::default() }, ..Default::default() }
}

/// Runs every holding certificate for `circle` with an escape search of
/// `budget` poses.
#[no_mangle]
pub unsafe extern "C" fn hc_holding_report(
    p: *const HcPolytope,
    circle: *const HcCircle,
    budget: usize,
    seed: u64,
    out: *mut *mut HcReport,
) -> HcStatus {
    guard(|| {
        let k = polytope(p)?;
        let c = to_circle(circle.as_ref().ok_or_else(|| null("circle"))?)?;
        let rep = holding_report(k, &c, &holding_config(budget, seed));
        write(out, Box::into_raw(Box::new(HcReport { inner: rep })))
    })
}

/// Smallest certified holding circle found by the search.
#[no_mangle]
pub unsafe extern "C" fn hc_min_holding_circle(p: *const HcPolytope, budget: usize, seed: u64, out: *mut HcCircle) -> HcStatus {
    guard(|| {
        let k = polytope(p)?;
        let cfg = SearchConfig { holding: holding_config(budget, seed), ..Default::default() };
        let found = min_holding_circle(k, &cfg)?;
        write(out, from_circle(&found.circle))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hc_report_verdict(r: *const HcReport, out: *mut HcVerdict) -> HcStatus {
    guard(|| {
        let rep = r.as_ref().ok_or_else(|| null("report"))?;
        let v = match rep.inner.verdict {
            Verdict::CertifiedHoldingEvidence => HcVerdict::CertifiedHoldingEvidence,
            Verdict::EscapeFound => HcVerdict::EscapeFound,
            Verdict::Inconclusive => HcVerdict::Inconclusive,
        };
        write(out, v)
    })
}

/// Report as JSON; free the string with [`hc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hc_report_to_json(r: *const HcReport, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let rep = r.as_ref().ok_or_else(|| null("report"))?;
        let s = CString::new(io::to_json(&rep.inner)?).map_err(|e| Failure(HcStatus::Internal, e.to_string()))?;
        write(out, s.into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hc_report_free(r: *mut HcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
