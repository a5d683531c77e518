import type { ViewState, TabId } from "./state.js";
import type { FieldResolutionJson, IdentifyResponse } from "./types.js";

export const BLOG_EMPTY_STATE =
  "No blog profiles were found for this address. Not every address has an associated blog profile.";

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function confidenceBadge(resolution: FieldResolutionJson): string {
  const pct = Math.round(resolution.confidence * 100);
  return `<span class="badge" title="agreement across sources">${pct}%</span>`;
}

function sourceList(sources: string[]): string {
  return `<span class="sources">${sources.map(escapeHtml).join(", ")}</span>`;
}

// Field values are rendered verbatim (escaped only): no trimming,
// casing or locale formatting on the client.
function summaryRow(label: string, resolution: FieldResolutionJson | null): string {
  if (resolution === null) {
    return `<tr><th>${label}</th><td class="missing">not found</td></tr>`;
  }
  const alternatives = resolution.alternatives.length
    ? `<div class="alternatives">also reported: ${resolution.alternatives
        .map((alt) => `${escapeHtml(alt.value)} (${alt.sources.map(escapeHtml).join(", ")})`)
        .join("; ")}</div>`
    : "";
  return `<tr><th>${label}</th><td><span class="value">${escapeHtml(resolution.value)}</span> ${confidenceBadge(resolution)} ${sourceList(resolution.sources)}${alternatives}</td></tr>`;
}

export function renderSummaryTab(response: IdentifyResponse): string {
  const indicator = response.summary_success
    ? '<p class="status ok">Summary information retrieved.</p>'
    : '<p class="status none">No summary information for this address.</p>';
  const image = response.summary.image
    ? `<img class="portrait" src="${escapeHtml(response.summary.image.value)}" alt="profile image">`
    : "";
  return `
    <section>
      ${indicator}
      ${image}
      <table class="summary-table">
        ${summaryRow("name", response.summary.name)}
        ${summaryRow("gender", response.summary.gender)}
        ${summaryRow("place", response.summary.place)}
        ${summaryRow("image", response.summary.image)}
      </table>
      <p class="provenance">sources queried: ${response.sources
        .map((s) => `${escapeHtml(s.provider)} (${escapeHtml(s.status)})`)
        .join(", ")}</p>
    </section>`;
}

export function renderBlogTab(response: IdentifyResponse): string {
  if (response.blog_profiles.length === 0) {
    return `<section><p class="empty-state">${BLOG_EMPTY_STATE}</p></section>`;
  }
  const entries = response.blog_profiles
    .map((blog) => {
      const avatar = blog.avatar_url
        ? `<img class="avatar" src="${escapeHtml(blog.avatar_url)}" alt="avatar">`
        : "";
      const name = blog.display_name
        ? `<span class="value blog-name">${escapeHtml(blog.display_name)}</span>`
        : '<span class="missing">unnamed</span>';
      const location = blog.location
        ? `<span class="value blog-location">${escapeHtml(blog.location)}</span>`
        : "";
      const about = blog.about ? `<p class="about">${escapeHtml(blog.about)}</p>` : "";
      return `<li class="blog-entry">
        ${avatar}
        <div>
          <div>${name} ${location}</div>
          <a href="${escapeHtml(blog.url)}" rel="noopener">${escapeHtml(blog.url)}</a>
          ${about}
        </div>
      </li>`;
    })
    .join("\n");
  return `<section><ul class="blog-list">${entries}</ul></section>`;
}

function tabButton(tab: TabId, label: string, active: TabId): string {
  const selected = tab === active;
  return `<button role="tab" data-tab="${tab}" aria-selected="${selected}" class="tab${selected ? " active" : ""}">${label}</button>`;
}

export function renderApp(state: ViewState): string {
  const tabs = `<nav role="tablist">
    ${tabButton("summary", "Summary Information", state.activeTab)}
    ${tabButton("blog", "Blog Profiles", state.activeTab)}
  </nav>`;

  const spinner = state.loading ? '<p class="loading" role="status">Searching…</p>' : "";
  const error = state.error ? `<p class="error" role="alert">${escapeHtml(state.error)}</p>` : "";

  let pane = '<section class="placeholder"><p>Enter an e-mail address to begin.</p></section>';
  if (state.lastResponse !== null) {
    pane =
      state.activeTab === "summary"
        ? renderSummaryTab(state.lastResponse)
        : renderBlogTab(state.lastResponse);
  }

  // exactly one pane is in the document at any time
  return `${tabs}${error}${spinner}<div class="pane" data-pane="${state.activeTab}">${pane}</div>`;
}
