# Tests unitarios para UDG-MCP
