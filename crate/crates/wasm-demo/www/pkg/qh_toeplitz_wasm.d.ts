/* tslint:disable */
/* eslint-disable */

/**
 * Root operator of `T_{e^{ip theta} r^((2M+1)p)}`: weight, symbol curve on `[0, 1]`, weights `w(0..=k_max)`.
 */
export function root_explorer(p: number, order: number, k_max: number): string;

/**
 * Both sides of the identity for one `m`, sampled on `k = 0..=k_max`, with their pole sets.
 */
export function sides(p: number, s: number, phi_order: number, psi_order: number, m: number, k_max: number): string;

/**
 * Full verification report for one parameter tuple.
 */
export function verify(p: number, s: number, phi_order: number, psi_order: number, m_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly root_explorer: (a: number, b: number, c: number) => [number, number];
    readonly sides: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly verify: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
