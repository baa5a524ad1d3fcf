#ifndef PERFCODE_H
#define PERFCODE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  PC_STATUS_INVALID_UTF8 = 2,
  PC_STATUS_INVALID_SPEC = 3,
  PC_STATUS_SYNTAX_ERROR = 4,
  PC_STATUS_SEMANTIC_ERROR = 5,
  PC_STATUS_NOT_SUBGROUP = 6,
  PC_STATUS_ELEMENT_OUT_OF_RANGE = 7,
  PC_STATUS_UNKNOWN_LABEL = 8,
  PC_STATUS_INVALID_CONNECTION_SET = 9,
  PC_STATUS_BUDGET_EXCEEDED = 10,
  PC_STATUS_ORDER_BOUND_EXCEEDED = 11,
  PC_STATUS_BUFFER_TOO_SMALL = 12,
  PC_STATUS_DISAGREEMENT = 13,
  PC_STATUS_IO = 14,
  PC_STATUS_PANIC = 15,
  PC_STATUS_OTHER = 16,
} PcStatus;

typedef struct PcDecision PcDecision;

typedef struct PcGroup PcGroup;

typedef struct PcSubgroup PcSubgroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a group from a spec string such as `"Q(24)"` or `"D(6) x Z(3)"`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out_group` a valid pointer.
enum PcStatus pc_group_from_spec(const char *spec, struct PcGroup **out_group);

// # Safety
// `group` must come from [`pc_group_from_spec`] and not be freed twice.
void pc_group_free(struct PcGroup *group);

// Number of elements, or 0 for a null handle.
//
// # Safety
// `group` must be null or a live handle.
uintptr_t pc_group_order(const struct PcGroup *group);

// # Safety
// `group` must be a live handle and `out_product` a valid pointer.
enum PcStatus pc_group_multiply(const struct PcGroup *group,
                                uint32_t a,
                                uint32_t b,
                                uint32_t *out_product);

// # Safety
// `group` must be a live handle and `out_inverse` a valid pointer.
enum PcStatus pc_group_inverse(const struct PcGroup *group, uint32_t a, uint32_t *out_inverse);

// # Safety
// `group` must be a live handle and `out_order` a valid pointer.
enum PcStatus pc_group_element_order(const struct PcGroup *group, uint32_t a, uintptr_t *out_order);

// Label of element `a`; release with [`pc_string_free`].
//
// # Safety
// `group` must be a live handle and `out_label` a valid pointer.
enum PcStatus pc_group_label(const struct PcGroup *group, uint32_t a, char **out_label);

// Resolves an element expression such as `"x^3*y"` to its index.
//
// # Safety
// `group` must be a live handle, `expr` NUL-terminated, `out_index` valid.
enum PcStatus pc_group_find(const struct PcGroup *group, const char *expr, uint32_t *out_index);

// Whether every subgroup of the group is a perfect code. With `verify`
// nonzero, every subgroup is also decided and cross-checked by search.
//
// # Safety
// `group` must be a live handle and `out_result` a valid pointer.
enum PcStatus pc_group_is_code_perfect(const struct PcGroup *group, bool verify, bool *out_result);

// Subgroup generated by `count` element indices.
//
// # Safety
// `group` must be a live handle, `generators` must point to `count`
// readable values (or be null when `count` is 0), `out_subgroup` valid.
enum PcStatus pc_subgroup_generated(const struct PcGroup *group,
                                    const uint32_t *generators,
                                    uintptr_t count,
                                    struct PcSubgroup **out_subgroup);

// Subgroup generated by a comma-separated list of element expressions.
//
// # Safety
// `group` must be a live handle, `generators` NUL-terminated, `out_subgroup` valid.
enum PcStatus pc_subgroup_from_labels(const struct PcGroup *group,
                                      const char *generators,
                                      struct PcSubgroup **out_subgroup);

// # Safety
// `subgroup` must be null or a live handle.
uintptr_t pc_subgroup_order(const struct PcSubgroup *subgroup);

// Copies the element indices in ascending order into `buffer`. Fails with
// [`PcStatus::BufferTooSmall`] when `capacity` is below the subgroup order;
// `out_len` always receives the order.
//
// # Safety
// `subgroup` must be a live handle, `buffer` writable for `capacity`
// values (or null when `capacity` is 0), `out_len` valid.
enum PcStatus pc_subgroup_elements(const struct PcSubgroup *subgroup,
                                   uint32_t *buffer,
                                   uintptr_t capacity,
                                   uintptr_t *out_len);

// # Safety
// `subgroup` must come from a `pc_subgroup_*` constructor and not be freed twice.
void pc_subgroup_free(struct PcSubgroup *subgroup);

// Decides whether `subgroup` is a perfect code of `group`.
//
// # Safety
// Both handles must be live, the subgroup built from the same group, and
// `out_decision` valid.
enum PcStatus pc_decide(const struct PcGroup *group,
                        const struct PcSubgroup *subgroup,
                        struct PcDecision **out_decision);

// # Safety
// `decision` must be null or a live handle.
bool pc_decision_verdict(const struct PcDecision *decision);

// Copies the witness connection set into `buffer`, ascending. A negative
// decision has an empty witness. Same buffer protocol as
// [`pc_subgroup_elements`].
//
// # Safety
// `decision` must be a live handle, `buffer` writable for `capacity`
// values (or null when `capacity` is 0), `out_len` valid.
enum PcStatus pc_decision_witness(const struct PcDecision *decision,
                                  uint32_t *buffer,
                                  uintptr_t capacity,
                                  uintptr_t *out_len);

// The decision as a JSON object; release with [`pc_string_free`].
//
// # Safety
// `decision` must be a live handle and `out_json` a valid pointer.
enum PcStatus pc_decision_to_json(const struct PcDecision *decision, char **out_json);

// # Safety
// `decision` must come from [`pc_decide`] and not be freed twice.
void pc_decision_free(struct PcDecision *decision);

// Checks that `code` is a perfect code of `Cay(G, S)` by the group-ring
// product and by graph domination; the two must agree.
//
// # Safety
// `group` must be a live handle; `connection` and `code` must point to the
// given number of readable values (or be null when the count is 0);
// `out_perfect` must be valid.
enum PcStatus pc_verify(const struct PcGroup *group,
                        const uint32_t *connection,
                        uintptr_t connection_len,
                        const uint32_t *code,
                        uintptr_t code_len,
                        bool *out_perfect);

// Message for the most recent failure on this thread, or null. The pointer
// stays valid until the next library call on the same thread.
const char *pc_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void pc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERFCODE_H */
