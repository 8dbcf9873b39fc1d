/** API base URL resolution: global override, then meta tag, then localhost. */

export function apiBase(): string {
  const fromGlobal = (globalThis as { DIARISK_API_BASE?: unknown }).DIARISK_API_BASE;
  if (typeof fromGlobal === "string" && fromGlobal) {
    return fromGlobal;
  }
  if (typeof document !== "undefined") {
    const meta = document.querySelector('meta[name="diarisk-api-base"]');
    const content = meta?.getAttribute("content");
    if (content) {
      return content;
    }
  }
  return "http://localhost:8000";
}
