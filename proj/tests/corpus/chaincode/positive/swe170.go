package main

import "os"

func Config() []byte {
	data, _ := os.ReadFile("/etc/chaincode.conf")
	return data
}
