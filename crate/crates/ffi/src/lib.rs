//! C ABI over the `perfcode` library.
//!
//! Groups, subgroups and decisions are opaque heap handles owned by the
//! caller and released with the matching `*_free` function. Every fallible
//! call returns a [`PcStatus`]; on failure a description is available from
//! [`pc_last_error_message`] on the same thread. Strings handed out by the
//! library are NUL-terminated and must be released with [`pc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use perfcode::classify::{decide, is_code_perfect, CodeDecision, Limits, Mode};
use perfcode::labels::resolve_list;
use perfcode::{
    build_group, generated_subgroup, group_ring_product_check, is_perfect_code_graph, parse_spec, CayleyGraph,
    ConnectionSet, ElementId, ElementSet, Error, FiniteGroup, Subgroup,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidSpec = 3,
    SyntaxError = 4,
    SemanticError = 5,
    NotSubgroup = 6,
    ElementOutOfRange = 7,
    UnknownLabel = 8,
    InvalidConnectionSet = 9,
    BudgetExceeded = 10,
    OrderBoundExceeded = 11,
    BufferTooSmall = 12,
    Disagreement = 13,
    Io = 14,
    Panic = 15,
    Other = 16,
}

impl From<&Error> for PcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidSpec(_) | Error::InvalidN(_) | Error::BadTableFile { .. } => PcStatus::InvalidSpec,
            Error::Syntax { .. } => PcStatus::SyntaxError,
            Error::Semantic { .. } => PcStatus::SemanticError,
            Error::NotSubgroup(_) => PcStatus::NotSubgroup,
            Error::ElementOutOfRange { .. } => PcStatus::ElementOutOfRange,
            Error::UnknownLabel(_) => PcStatus::UnknownLabel,
            Error::ContainsIdentity | Error::NotInverseClosed { .. } => PcStatus::InvalidConnectionSet,
            Error::BudgetExceeded(_) => PcStatus::BudgetExceeded,
            Error::OrderBoundExceeded { .. } => PcStatus::OrderBoundExceeded,
            Error::Disagreement(_) => PcStatus::Disagreement,
            Error::Io(_) => PcStatus::Io,
            _ => PcStatus::Other,
        }
    }
}

pub struct PcGroup {
    inner: FiniteGroup,
}

pub struct PcSubgroup {
    inner: Subgroup,
}

pub struct PcDecision {
    inner: CodeDecision,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(PcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(PcStatus::from(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PcStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PcStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            PcStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn element(g: &FiniteGroup, index: u32) -> Result<ElementId, Failure> {
    let id = ElementId(index);
    g.check_element(id)?;
    Ok(id)
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// Builds a group from a spec string such as `"Q(24)"` or `"D(6) x Z(3)"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out_group` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_group_from_spec(spec: *const c_char, out_group: *mut *mut PcGroup) -> PcStatus {
    guard(|| {
        let slot = out(out_group, "out_group")?;
        *slot = ptr::null_mut();
        let g = build_group(&parse_spec(str_arg(spec, "spec")?)?)?;
        *slot = Box::into_raw(Box::new(PcGroup { inner: g }));
        Ok(())
    })
}

/// # Safety
/// `group` must come from [`pc_group_from_spec`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_group_free(group: *mut PcGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pc_group_order(group: *const PcGroup) -> usize {
    group.as_ref().map_or(0, |g| g.inner.order())
}

/// # Safety
/// `group` must be a live handle and `out_product` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_group_multiply(group: *const PcGroup, a: u32, b: u32, out_product: *mut u32) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        let (a, b) = (element(g, a)?, element(g, b)?);
        *out(out_product, "out_product")? = g.mul(a, b).0;
        Ok(())
    })
}

/// # Safety
/// `group` must be a live handle and `out_inverse` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_group_inverse(group: *const PcGroup, a: u32, out_inverse: *mut u32) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        *out(out_inverse, "out_inverse")? = g.inv(element(g, a)?).0;
        Ok(())
    })
}

/// # Safety
/// `group` must be a live handle and `out_order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_group_element_order(group: *const PcGroup, a: u32, out_order: *mut usize) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        *out(out_order, "out_order")? = g.element_order(element(g, a)?);
        Ok(())
    })
}

/// Label of element `a`; release with [`pc_string_free`].
///
/// # Safety
/// `group` must be a live handle and `out_label` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_group_label(group: *const PcGroup, a: u32, out_label: *mut *mut c_char) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        let slot = out(out_label, "out_label")?;
        *slot = owned_string(g.label(element(g, a)?).to_string());
        Ok(())
    })
}

/// Resolves an element expression such as `"x^3*y"` to its index.
///
/// # Safety
/// `group` must be a live handle, `expr` NUL-terminated, `out_index` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_group_find(group: *const PcGroup, expr: *const c_char, out_index: *mut u32) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        *out(out_index, "out_index")? = perfcode::labels::resolve_element(g, str_arg(expr, "expr")?)?.0;
        Ok(())
    })
}

/// Whether every subgroup of the group is a perfect code. With `verify`
/// nonzero, every subgroup is also decided and cross-checked by search.
///
/// # Safety
/// `group` must be a live handle and `out_result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_group_is_code_perfect(
    group: *const PcGroup,
    verify: bool,
    out_result: *mut bool,
) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        let slot = out(out_result, "out_result")?;
        let mode = if verify { Mode::Verify } else { Mode::Fast };
        *slot = is_code_perfect(g, mode, &Limits::from_env()?)?.code_perfect;
        Ok(())
    })
}

/// Subgroup generated by `count` element indices.
///
/// # Safety
/// `group` must be a live handle, `generators` must point to `count`
/// readable values (or be null when `count` is 0), `out_subgroup` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_subgroup_generated(
    group: *const PcGroup,
    generators: *const u32,
    count: usize,
    out_subgroup: *mut *mut PcSubgroup,
) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        let slot = out(out_subgroup, "out_subgroup")?;
        *slot = ptr::null_mut();
        let gens: &[u32] = match count {
            0 => &[],
            _ if generators.is_null() => return Err(null("generators")),
            _ => std::slice::from_raw_parts(generators, count),
        };
        let ids = gens.iter().map(|&i| element(g, i)).collect::<Result<Vec<_>, _>>()?;
        *slot = Box::into_raw(Box::new(PcSubgroup {
            inner: generated_subgroup(g, ids)?,
        }));
        Ok(())
    })
}

/// Subgroup generated by a comma-separated list of element expressions.
///
/// # Safety
/// `group` must be a live handle, `generators` NUL-terminated, `out_subgroup` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_subgroup_from_labels(
    group: *const PcGroup,
    generators: *const c_char,
    out_subgroup: *mut *mut PcSubgroup,
) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        let slot = out(out_subgroup, "out_subgroup")?;
        *slot = ptr::null_mut();
        let ids = resolve_list(g, str_arg(generators, "generators")?)?;
        *slot = Box::into_raw(Box::new(PcSubgroup {
            inner: generated_subgroup(g, ids)?,
        }));
        Ok(())
    })
}

/// # Safety
/// `subgroup` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pc_subgroup_order(subgroup: *const PcSubgroup) -> usize {
    subgroup.as_ref().map_or(0, |h| h.inner.order())
}

/// Copies the element indices in ascending order into `buffer`. Fails with
/// [`PcStatus::BufferTooSmall`] when `capacity` is below the subgroup order;
/// `out_len` always receives the order.
///
/// # Safety
/// `subgroup` must be a live handle, `buffer` writable for `capacity`
/// values (or null when `capacity` is 0), `out_len` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_subgroup_elements(
    subgroup: *const PcSubgroup,
    buffer: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> PcStatus {
    guard(|| {
        let list = handle(subgroup, "subgroup")?.inner.list();
        *out(out_len, "out_len")? = list.len();
        if capacity < list.len() {
            return Err(Failure(
                PcStatus::BufferTooSmall,
                format!("buffer holds {capacity} elements, {} needed", list.len()),
            ));
        }
        if !list.is_empty() {
            if buffer.is_null() {
                return Err(null("buffer"));
            }
            let dst = std::slice::from_raw_parts_mut(buffer, list.len());
            for (d, e) in dst.iter_mut().zip(list) {
                *d = e.0;
            }
        }
        Ok(())
    })
}

/// # Safety
/// `subgroup` must come from a `pc_subgroup_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_subgroup_free(subgroup: *mut PcSubgroup) {
    if !subgroup.is_null() {
        drop(Box::from_raw(subgroup));
    }
}

/// Decides whether `subgroup` is a perfect code of `group`.
///
/// # Safety
/// Both handles must be live, the subgroup built from the same group, and
/// `out_decision` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_decide(
    group: *const PcGroup,
    subgroup: *const PcSubgroup,
    out_decision: *mut *mut PcDecision,
) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        let h = &handle(subgroup, "subgroup")?.inner;
        let slot = out(out_decision, "out_decision")?;
        *slot = ptr::null_mut();
        if h.elements().universe() != g.order() {
            return Err(Failure(
                PcStatus::NotSubgroup,
                "subgroup belongs to a different group".into(),
            ));
        }
        let d = decide(g, h, &Limits::from_env()?)?;
        *slot = Box::into_raw(Box::new(PcDecision { inner: d }));
        Ok(())
    })
}

/// # Safety
/// `decision` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pc_decision_verdict(decision: *const PcDecision) -> bool {
    decision.as_ref().is_some_and(|d| d.inner.verdict)
}

/// Copies the witness connection set into `buffer`, ascending. A negative
/// decision has an empty witness. Same buffer protocol as
/// [`pc_subgroup_elements`].
///
/// # Safety
/// `decision` must be a live handle, `buffer` writable for `capacity`
/// values (or null when `capacity` is 0), `out_len` valid.
#[no_mangle]
pub unsafe extern "C" fn pc_decision_witness(
    decision: *const PcDecision,
    buffer: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> PcStatus {
    guard(|| {
        let d = &handle(decision, "decision")?.inner;
        let ids: Vec<u32> = d
            .witness
            .as_ref()
            .map(|s| s.elements().iter().map(|e| e.0).collect())
            .unwrap_or_default();
        *out(out_len, "out_len")? = ids.len();
        if capacity < ids.len() {
            return Err(Failure(
                PcStatus::BufferTooSmall,
                format!("buffer holds {capacity} elements, {} needed", ids.len()),
            ));
        }
        if !ids.is_empty() {
            if buffer.is_null() {
                return Err(null("buffer"));
            }
            std::slice::from_raw_parts_mut(buffer, ids.len()).copy_from_slice(&ids);
        }
        Ok(())
    })
}

/// The decision as a JSON object; release with [`pc_string_free`].
///
/// # Safety
/// `decision` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_decision_to_json(decision: *const PcDecision, out_json: *mut *mut c_char) -> PcStatus {
    guard(|| {
        let d = &handle(decision, "decision")?.inner;
        let json = serde_json::to_string(d).map_err(|e| Failure(PcStatus::Other, e.to_string()))?;
        *out(out_json, "out_json")? = owned_string(json);
        Ok(())
    })
}

/// # Safety
/// `decision` must come from [`pc_decide`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_decision_free(decision: *mut PcDecision) {
    if !decision.is_null() {
        drop(Box::from_raw(decision));
    }
}

/// Checks that `code` is a perfect code of `Cay(G, S)` by the group-ring
/// product and by graph domination; the two must agree.
///
/// # Safety
/// `group` must be a live handle; `connection` and `code` must point to the
/// given number of readable values (or be null when the count is 0);
/// `out_perfect` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pc_verify(
    group: *const PcGroup,
    connection: *const u32,
    connection_len: usize,
    code: *const u32,
    code_len: usize,
    out_perfect: *mut bool,
) -> PcStatus {
    guard(|| {
        let g = &handle(group, "group")?.inner;
        let slot = out(out_perfect, "out_perfect")?;
        let to_set = |p: *const u32, n: usize, what: &str| -> Result<ElementSet, Failure> {
            let raw: &[u32] = match n {
                0 => &[],
                _ if p.is_null() => return Err(null(what)),
                _ => std::slice::from_raw_parts(p, n),
            };
            Ok(ElementSet::from_ids(g.order(), raw.iter().map(|&i| ElementId(i)))?)
        };
        let s = ConnectionSet::new(g, to_set(connection, connection_len, "connection")?)?;
        let c = to_set(code, code_len, "code")?;
        let ring = group_ring_product_check(g, &s, &c).is_all_ones();
        let graph = is_perfect_code_graph(&CayleyGraph::new(g, s), &c);
        if ring != graph {
            return Err(Error::Disagreement(format!("group-ring product {ring}, graph domination {graph}")).into());
        }
        *slot = ring;
        Ok(())
    })
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
