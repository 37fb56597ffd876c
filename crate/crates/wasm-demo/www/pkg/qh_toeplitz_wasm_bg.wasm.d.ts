/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const root_explorer: (a: number, b: number, c: number) => [number, number];
export const sides: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
export const verify: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
