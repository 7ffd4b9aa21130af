/* tslint:disable */
/* eslint-disable */

/**
 * `[lower, oracle, upper]` for `func`. Nuttall has no lower bound, so its
 * first entry is the truncation bound at p = 20 instead.
 */
export function bracket(func: string, p1: number, p2: number, p3: number, p4: number): Float64Array;

/**
 * Evaluates `func` (nuttall, toronto, rice-ie, ilhi) by `route`.
 * Returns `[value, oracle, est_error]`. Unused parameters are ignored.
 */
export function evaluate(func: string, route: string, p1: number, p2: number, p3: number, p4: number): Float64Array;

/**
 * Outage probability curve: `points` thresholds evenly spaced in dB over
 * `[lo_db, hi_db]`, for the named model with shape parameters `(s1, s2)` and
 * `alpha` (ignored by the models without one).
 */
export function outage_curve(model: string, alpha: number, s1: number, s2: number, gamma_bar_db: number, lo_db: number, hi_db: number, points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly bracket: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly evaluate: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly outage_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
