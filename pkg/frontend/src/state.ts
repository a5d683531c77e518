import type { IdentifyResponse } from "./types.js";

export type TabId = "summary" | "blog";

export interface ViewState {
  query: string;
  activeTab: TabId;
  lastResponse: IdentifyResponse | null;
  loading: boolean;
  error: string | null;
  generation: number;
}

export const initialState: ViewState = {
  query: "",
  activeTab: "summary",
  lastResponse: null,
  loading: false,
  error: null,
  generation: 0,
};

// Each submit bumps the generation; results carry the generation they
// answer so anything stale is dropped on arrival.

export function submitStarted(state: ViewState, query: string): ViewState {
  return {
    ...state,
    query,
    loading: true,
    error: null,
    generation: state.generation + 1,
  };
}

export function responseArrived(
  state: ViewState,
  generation: number,
  response: IdentifyResponse,
): ViewState {
  if (generation !== state.generation) return state;
  return { ...state, loading: false, lastResponse: response, error: null };
}

export function requestFailed(state: ViewState, generation: number, message: string): ViewState {
  if (generation !== state.generation) return state;
  return { ...state, loading: false, error: message };
}

export function validationFailed(state: ViewState, query: string, message: string): ViewState {
  return { ...state, query, loading: false, error: message };
}

export function tabSwitched(state: ViewState, tab: TabId): ViewState {
  if (tab === state.activeTab) return state;
  return { ...state, activeTab: tab };
}
