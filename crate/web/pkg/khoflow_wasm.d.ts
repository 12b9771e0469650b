/* tslint:disable */
/* eslint-disable */

/**
 * Determinant and H1 of the double branched cover as a DetReport.
 */
export function branched_invariants(pd: string): string;

/**
 * JSON array of the bundled corpus names.
 */
export function corpus_names(): string;

/**
 * PD code of a bundled corpus diagram.
 */
export function corpus_pd(name: string): string;

/**
 * Khovanov homology table (reduced or unreduced) as a KhReport.
 */
export function diagram_homology(pd: string, reduced: boolean): string;

/**
 * Parsed diagram summary: crossings, signs, components.
 */
export function diagram_info(pd: string): string;

/**
 * Spectral sequence page dims of the weight-filtered cube, pages 1..=max.
 */
export function spectral_pages(pd: string, max_page: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly branched_invariants: (a: number, b: number) => [number, number, number, number];
    readonly corpus_names: () => [number, number];
    readonly corpus_pd: (a: number, b: number) => [number, number, number, number];
    readonly diagram_homology: (a: number, b: number, c: number) => [number, number, number, number];
    readonly diagram_info: (a: number, b: number) => [number, number, number, number];
    readonly spectral_pages: (a: number, b: number, c: number) => [number, number, number, number];
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
