/* C ABI for the vknot Gauss-diagram invariant library. */

#ifndef VKNOT_H
#define VKNOT_H

/* This file is generated by cbindgen from the vknot-capi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Diagram families the fuzzer can exercise.
typedef enum VkFuzzKind {
  VK_FUZZ_KIND_KNOT = 0,
  VK_FUZZ_KIND_FLAT_LONG = 1,
  VK_FUZZ_KIND_LINK = 2,
} VkFuzzKind;

// Diagram kinds, matching the Gauss code prefixes.
typedef enum VkKind {
  VK_KIND_KNOT = 0,
  VK_KIND_LONG = 1,
  VK_KIND_FLAT_LONG = 2,
  VK_KIND_LINK = 3,
} VkKind;

// Result of any fallible call.
typedef enum VkStatus {
  // The call succeeded.
  VK_STATUS_OK = 0,
  // A required pointer argument was null.
  VK_STATUS_NULL_ARGUMENT = 1,
  // An input string was not valid UTF-8.
  VK_STATUS_INVALID_UTF8 = 2,
  // The Gauss code is syntactically malformed.
  VK_STATUS_PARSE_ERROR = 3,
  // The Gauss code parsed but does not describe a valid diagram.
  VK_STATUS_INVALID_DIAGRAM = 4,
  // The operation is not defined for this diagram kind.
  VK_STATUS_KIND_MISMATCH = 5,
  // A randomized property run found an invariance violation.
  VK_STATUS_PROPERTY_FAILED = 6,
} VkStatus;

// Argument-free transforms offered over the C ABI.
typedef enum VkTransform {
  // Reverse the orientation (any kind).
  VK_TRANSFORM_INVERSE = 0,
  // Switch every crossing (knots and links).
  VK_TRANSFORM_MIRROR = 1,
  // Close a long diagram into a knot.
  VK_TRANSFORM_CLOSURE = 2,
  // The descending resolution of a flat long diagram.
  VK_TRANSFORM_DESCENDING = 3,
} VkTransform;

// An opaque parsed Gauss diagram.
typedef struct VkDiagram VkDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The last error message of this thread, or null if none was recorded.
// The caller owns the returned string and must release it with
// `vk_string_free`.
char *vk_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library and not yet freed.
void vk_string_free(char *s);

// Parses a Gauss code (e.g. `"knot: O1+ O2+ U1+ U2+"`) into a new diagram
// handle stored in `*out`.
//
// # Safety
// `code` must be a valid NUL-terminated string and `out` a valid pointer.
enum VkStatus vk_diagram_parse(const char *code, struct VkDiagram **out);

// Releases a diagram handle. Null is ignored.
//
// # Safety
// `d` must be null or a handle obtained from this library and not yet freed.
void vk_diagram_free(struct VkDiagram *d);

// Writes the diagram's kind to `*out`.
//
// # Safety
// `d` and `out` must be valid pointers.
enum VkStatus vk_diagram_kind(const struct VkDiagram *d, enum VkKind *out);

// Writes the canonical Gauss code of the diagram to `*out`.
//
// # Safety
// `d` and `out` must be valid pointers.
enum VkStatus vk_diagram_serialize(const struct VkDiagram *d, char **out);

// Writes the full invariant report of the diagram to `*out` as one JSON
// object (schema-stable and byte-deterministic).
//
// # Safety
// `d` and `out` must be valid pointers.
enum VkStatus vk_diagram_report_json(const struct VkDiagram *d, char **out);

// Writes the human-readable invariant report of the diagram to `*out`.
//
// # Safety
// `d` and `out` must be valid pointers.
enum VkStatus vk_diagram_report_text(const struct VkDiagram *d, char **out);

// Applies an argument-free transform, storing the new handle in `*out`.
// The input handle is untouched.
//
// # Safety
// `d` and `out` must be valid pointers.
enum VkStatus vk_diagram_transform(const struct VkDiagram *d,
                                   enum VkTransform op,
                                   struct VkDiagram **out);

// Runs the move-invariance fuzzer and writes its JSON report to `*out`.
// Returns `Ok` when every trial passed and `PropertyFailed` when the report
// contains failures (the report is written either way).
//
// # Safety
// `out` must be a valid pointer.
enum VkStatus vk_fuzz_json(enum VkFuzzKind kind,
                           uint64_t seed,
                           uint32_t trials,
                           uint32_t steps,
                           uint32_t max_chords,
                           char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VKNOT_H */
