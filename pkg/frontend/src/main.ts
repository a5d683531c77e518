import { ApiError, fetchIdentify, validateEmail, type FetchLike } from "./api.js";
import { renderApp } from "./render.js";
import {
  initialState,
  requestFailed,
  responseArrived,
  submitStarted,
  tabSwitched,
  validationFailed,
  type TabId,
  type ViewState,
} from "./state.js";

export interface AppHandle {
  getState(): ViewState;
  submit(email: string): Promise<void>;
  switchTab(tab: TabId): void;
}

// At most one identify request is in flight; a new submit aborts the
// previous one and stale responses are discarded by generation.
export function mountApp(root: HTMLElement, fetchFn?: FetchLike): AppHandle {
  let state = initialState;
  let controller: AbortController | null = null;

  function render(): void {
    const results = root.querySelector<HTMLElement>("#results");
    if (results) results.innerHTML = renderApp(state);
  }

  function setState(next: ViewState): void {
    if (next !== state) {
      state = next;
      render();
    }
  }

  async function submit(email: string): Promise<void> {
    const problem = validateEmail(email);
    if (problem) {
      controller?.abort();
      controller = null;
      setState(validationFailed(state, email, problem));
      return;
    }
    controller?.abort();
    controller = new AbortController();
    const next = submitStarted(state, email);
    const generation = next.generation;
    setState(next);
    try {
      const response = await fetchIdentify(email.trim(), {
        signal: controller.signal,
        fetchFn,
      });
      setState(responseArrived(state, generation, response));
    } catch (error) {
      if (error instanceof DOMException && error.name === "AbortError") return;
      const message =
        error instanceof ApiError ? error.message : "Something went wrong; please retry.";
      setState(requestFailed(state, generation, message));
    }
  }

  function switchTab(tab: TabId): void {
    setState(tabSwitched(state, tab));
  }

  root.innerHTML = `
    <header>
      <h1>mailsleuth</h1>
      <p class="tagline">Who is behind an e-mail address?</p>
      <form id="search-form">
        <input id="email-input" type="text" name="email" placeholder="name@example.com"
               autocomplete="off" spellcheck="false">
        <button type="submit">Identify</button>
      </form>
    </header>
    <main id="results"></main>
  `;
  render();

  const form = root.querySelector<HTMLFormElement>("#search-form")!;
  const input = root.querySelector<HTMLInputElement>("#email-input")!;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void submit(input.value);
  });
  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement | null;
    const button = target?.closest<HTMLElement>("button[data-tab]");
    if (button) switchTab(button.dataset.tab as TabId);
  });

  return { getState: () => state, submit, switchTab };
}

declare global {
  interface Window {
    __mailsleuth?: AppHandle;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.__mailsleuth = mountApp(document.getElementById("app")!);
}
