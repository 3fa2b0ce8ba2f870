// Application wiring: one committed config, one dialog at a time, and a
// latest-wins guard so a slow /compare can never clobber a newer one.

import { ApiError, SearchClient } from "./api.js";
import {
  AppState,
  DialogDraft,
  draftFromSpec,
  initialState,
  specFromDraft,
  withClause,
} from "./state.js";
import { facetFor, render, Handlers } from "./render.js";
import type { FilterConfigTree } from "./types.js";

export class App {
  state: AppState;
  private seq = 0;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: SearchClient,
    contributions: string[],
  ) {
    this.state = initialState(contributions);
  }

  /** Load the initial view: a live comparison, or a stored snapshot. */
  async boot(savedId?: string): Promise<void> {
    if (savedId) {
      try {
        const snapshot = await this.client.getSaved(savedId);
        this.state.contributions = snapshot.source;
        this.state.committed = snapshot.filter;
        // A snapshot is itself a server response; render it as-is. The next
        // commit switches to a live /compare over its source contributions.
        this.state.response = {
          table: snapshot.table,
          facets: [],
          active_filters: snapshot.filter,
        };
        this.render();
        return;
      } catch (error) {
        this.fail(error);
      }
    }
    await this.refresh(this.state.committed);
  }

  /** POST /compare and adopt the response (and its canonical filter echo). */
  async refresh(config: FilterConfigTree): Promise<void> {
    const ticket = ++this.seq;
    this.state.loading = true;
    this.render();
    try {
      const response = await this.client.compare(this.state.contributions, config);
      if (ticket !== this.seq) return; // superseded by a newer request
      this.state.response = response;
      this.state.committed = response.active_filters;
      this.state.error = null;
      this.state.shareUrl = null;
    } catch (error) {
      if (ticket !== this.seq) return;
      this.fail(error);
    } finally {
      if (ticket === this.seq) {
        this.state.loading = false;
        this.render();
      }
    }
  }

  openDialog(property: string): void {
    const facets = this.state.response?.facets ?? [];
    const facet = facetFor(facets, property);
    if (!facet) return;
    this.state.dialog = {
      property,
      facet,
      draft: draftFromSpec(facet, this.state.committed[property]),
      visible: facet.candidates.map((c) => c.value),
      search: "",
    };
    this.render();
  }

  /** Closing without applying must leave the committed state untouched. */
  cancelDialog(): void {
    this.state.dialog = null;
    this.render();
  }

  async applyDialog(): Promise<void> {
    const dialog = this.state.dialog;
    if (!dialog) return;
    const spec = specFromDraft(dialog.draft);
    this.state.dialog = null;
    await this.refresh(withClause(this.state.committed, dialog.property, spec));
  }

  async removeChip(property: string): Promise<void> {
    await this.refresh(withClause(this.state.committed, property, null));
  }

  async save(): Promise<void> {
    try {
      const saved = await this.client.save(this.state.contributions, this.state.committed);
      this.state.shareUrl = saved.url;
      this.state.error = null;
    } catch (error) {
      this.fail(error);
    }
    this.render();
  }

  async searchCandidates(text: string): Promise<void> {
    const dialog = this.state.dialog;
    if (!dialog) return;
    dialog.search = text;
    if (!text) {
      dialog.visible = dialog.facet.candidates.map((c) => c.value);
      this.render();
      return;
    }
    try {
      dialog.visible = await this.client.autocomplete(
        this.state.contributions,
        dialog.property,
        text,
      );
    } catch {
      dialog.visible = [];
    }
    if (this.state.dialog === dialog) this.render();
  }

  toggleCandidate(value: string, checked: boolean): void {
    const draft = this.state.dialog?.draft;
    if (!draft || draft.kind !== "string") return;
    if (checked) draft.selected.add(value);
    else draft.selected.delete(value);
  }

  changeDraft(field: string, value: string | boolean): void {
    const dialog = this.state.dialog;
    if (!dialog) return;
    const draft = dialog.draft as DialogDraft & Record<string, unknown>;
    if (field === "mode") {
      (draft as Record<string, unknown>)["mode"] = value;
      this.render(); // mode switches swap the input row
      return;
    }
    (draft as Record<string, unknown>)[field] = value;
  }

  private fail(error: unknown): void {
    if (error instanceof ApiError) {
      this.state.error = `${error.code}: ${error.message}`;
    } else {
      this.state.error = String(error);
    }
  }

  render(): void {
    const handlers: Handlers = {
      onOpenDialog: (property) => this.openDialog(property),
      onCancelDialog: () => this.cancelDialog(),
      onApplyDialog: () => void this.applyDialog(),
      onRemoveChip: (property) => void this.removeChip(property),
      onSave: () => void this.save(),
      onToggleCandidate: (value, checked) => this.toggleCandidate(value, checked),
      onSearchInput: (text) => void this.searchCandidates(text),
      onDraftChange: (field, value) => this.changeDraft(field, value),
    };
    render(this.root, this.state, handlers);
  }
}

/** Entry point: contributions come from the URL, e.g. ?contributions=C1,C2,C3
 *  or ?saved=<id> to open a stored snapshot. */
export function mount(root: HTMLElement, baseUrl = ""): App {
  const params = new URLSearchParams(window.location.search);
  const contributions = (params.get("contributions") ?? "")
    .split(",")
    .map((part) => part.trim())
    .filter(Boolean);
  const app = new App(root, new SearchClient(baseUrl), contributions);
  void app.boot(params.get("saved") ?? undefined);
  return app;
}
