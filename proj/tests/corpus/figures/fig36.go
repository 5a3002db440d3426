type BadChaincode struct {
    globalValue string // this is a risk
}
func(t * BadChaincode) Invoke(stub shim.ChaincodeStubInterface) peer.Response {
    t.globalValue = args[0]
    return shim.Success([] byte("success"))
}
