/* tslint:disable */
/* eslint-disable */

export class PhaseMap {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Area fraction per mode code.
     */
    fractions(): Float64Array;
    /**
     * 0 engine, 1 refrigerator, 2 accelerator, 3 heater, 4 undefined.
     */
    modes(): Uint8Array;
    performance(): Float64Array;
    readonly height: number;
    readonly width: number;
}

/**
 * JSON: `{branch, a, b, classification, thresholds}`.
 */
export function classify_point(branch: string, epsilon: number, tau: number, temperature: number, strength: number): string;

/**
 * JSON: `{dU, dS, closed_form, max_discrepancy, states}`.
 */
export function cycle_ledger(epsilon: number, tau: number, temperature: number, a: number, b: number): string;

export function phase_map(branch: string, temperature: number, tau: number, strength_steps: number, epsilon_min: number, epsilon_max: number, epsilon_steps: number): PhaseMap;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_phasemap_free: (a: number, b: number) => void;
    readonly classify_point: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly cycle_ledger: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly phase_map: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly phasemap_fractions: (a: number) => [number, number];
    readonly phasemap_height: (a: number) => number;
    readonly phasemap_modes: (a: number) => [number, number];
    readonly phasemap_performance: (a: number) => [number, number];
    readonly phasemap_width: (a: number) => number;
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
