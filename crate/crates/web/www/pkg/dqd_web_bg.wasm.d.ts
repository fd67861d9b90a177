/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_phasemap_free: (a: number, b: number) => void;
export const classify_point: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const cycle_ledger: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const phase_map: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const phasemap_fractions: (a: number) => [number, number];
export const phasemap_height: (a: number) => number;
export const phasemap_modes: (a: number) => [number, number];
export const phasemap_performance: (a: number) => [number, number];
export const phasemap_width: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
